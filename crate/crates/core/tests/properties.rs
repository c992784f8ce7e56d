//! Cross-module properties on built groups.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num::complex::Complex64;
use proptest::prelude::*;
use qrgroups::exact::{q, q_int};
use qrgroups::groups::*;
use qrgroups::mixing::*;
use qrgroups::modring::Modulus;
use qrgroups::productfree::*;
use qrgroups::quasirandom::*;
use qrgroups::reptheory::*;
use qrgroups::Exec;

const B: u64 = DEFAULT_ELEMENT_BUDGET;

struct Built {
    g: GroupTable,
    classes: ClassData,
    table: CharacterTable,
}

fn built(g: GroupTable) -> Built {
    let classes = ClassData::compute(&g);
    let table = character_table(&g, &classes).unwrap();
    Built { g, classes, table }
}

fn sl_cases() -> &'static [(Built, u64, u32)] {
    static CELL: OnceLock<Vec<(Built, u64, u32)>> = OnceLock::new();
    CELL.get_or_init(|| {
        [(2usize, 3u64, 2u32), (2, 5, 1), (3, 3, 1), (2, 7, 1)]
            .into_iter()
            .map(|(k, p, n)| (built(build_sl(k, p, n, B).unwrap()), p, n))
            .collect()
    })
}

fn assorted() -> Vec<GroupTable> {
    vec![
        build_quaternion().unwrap(),
        build_abelian(&[2, 4], B).unwrap(),
        build_sym(4, B).unwrap(),
        build_alt(5, B).unwrap(),
        build_sym(5, B).unwrap(),
        build_tree_level(2, 2, B).unwrap(),
        build_sl(2, 3, 1, B).unwrap(),
        build_sp(1, 5, 1, B).unwrap(),
    ]
}

#[test]
fn e1_lies_outside_every_nontrivial_kernel() {
    for (b, _, _) in sl_cases() {
        let e1 = sl_e1_class(&b.g, &b.classes).unwrap();
        assert!(e1_outside_nontrivial_kernels(&b.table, e1), "{}", b.g.descriptor().label());
        for c in (0..b.table.r()).filter(|&c| !b.table.is_trivial(c)) {
            let at_e1 = b.table.value(c, e1);
            let degree = b.table.degree(c) as f64;
            assert!((at_e1 - Complex64::new(degree, 0.0)).norm() > 1e-6);
        }
    }
}

#[test]
fn minimal_faithful_sets_see_a_primitive_root() {
    for (b, p, n) in sl_cases() {
        let e1 = sl_e1_class(&b.g, &b.classes).unwrap();
        let mf = min_faithful_degree(&b.table).unwrap();
        assert!(set_sees_primitive_root(&b.table, &mf.characters, e1, *p, *n), "{}", b.g.descriptor().label());
        // any faithful irreducible alone must also see one
        for c in 0..b.table.r() {
            if b.table.kernel(c) == [0] {
                assert!(set_sees_primitive_root(&b.table, &[c], e1, *p, *n));
            }
        }
    }
}

#[test]
fn degrees_dominate_the_closed_forms() {
    for (b, p, n) in sl_cases() {
        let k = match b.g.kind() {
            ElementKind::Matrix { dim, .. } => *dim,
            _ => unreachable!(),
        };
        let family = LinearFamily::for_group(false, k);
        let m = min_nontrivial_degree(&b.table).unwrap();
        let mf = min_faithful_degree(&b.table).unwrap().value;
        assert!(q_int(m) >= h_bound(family, k, *p).unwrap());
        assert!(q_int(mf) >= hf_bound(family, k, *p, *n).unwrap());
        assert!(mf >= m);
    }
}

#[test]
fn table_identities_on_assorted_groups() {
    for g in assorted() {
        let b = built(g);
        let label = b.g.descriptor().label();
        let sum: u64 = b.table.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum, b.g.order() as u64, "{label}");
        assert_eq!(b.table.r(), b.classes.num_classes(), "{label}");
        let (row, col) = b.table.orthogonality_defect();
        assert!(row <= 1e-6 && col <= 1e-6, "{label}: {row} {col}");
        for d in b.table.degrees() {
            assert_eq!(b.g.order() as u64 % d, 0, "{label}: degree {d}");
        }
    }
}

#[test]
fn exact_degrees_match_the_float_oracle() {
    for g in assorted().into_iter().filter(|g| g.order() <= FLOAT_ORACLE_LIMIT) {
        let b = built(g);
        let mut exact = b.table.degrees().to_vec();
        exact.sort_unstable();
        let oracle = regular_representation_degrees(&b.g, &b.classes, 3).unwrap();
        assert_eq!(exact, oracle, "{}", b.g.descriptor().label());
    }
}

#[test]
fn cosets_never_beat_the_exact_maximum() {
    let cases = [
        (build_sl(2, 3, 1, B).unwrap(), StabilizerAction::Projective),
        (build_sym(4, B).unwrap(), StabilizerAction::RootNeighbor(0)),
        (build_alt(4, B).unwrap(), StabilizerAction::RootNeighbor(0)),
        (build_tree_level(2, 2, B).unwrap(), StabilizerAction::RootNeighbor(0)),
    ];
    for (g, action) in cases {
        let (h, index) = stabilizer_subgroup(&g, action).unwrap();
        let coset = coset_product_free(&g, &h).unwrap();
        assert_eq!(coset.density, q(1, index as i64));
        assert!(verify_product_free(&g, &coset.witness));
        let best = exact_max_product_free(&g, DEFAULT_NODE_BUDGET, Exec::Sequential).unwrap();
        assert!(best.optimal);
        assert!(verify_product_free(&g, &best.witness));
        assert!(coset.density <= best.density, "{}", g.descriptor().label());
        assert!(best.density <= q(1, 2));
    }
}

#[test]
fn abelian_search_matches_formula_up_to_64() {
    for order in 33..=64u64 {
        for factors in abelian_invariant_factor_lists(order) {
            let r = formula_vs_search(&factors, DEFAULT_NODE_BUDGET, Exec::default()).unwrap();
            assert!(r.pass, "{factors:?}: {} vs {}", r.computed, r.formula);
        }
    }
}

fn unitary_perm(n: usize, images: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| if images[j] == i { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sp_conjugation_identities_hold(
        k in 2usize..=3,
        p in prop::sample::select(vec![3u64, 5]),
        n in 1u32..=2,
        t_raw in 1u32..1000,
        a_raw in prop::collection::vec(0u32..1000, 2),
    ) {
        let modulus = Modulus::new(p, n).unwrap();
        let q = modulus.value() as u32;
        // units are the residues prime to p
        let mut t = t_raw % q;
        while (t as u64).is_multiple_of(p) {
            t = (t + 1) % q;
        }
        let a: Vec<u32> = a_raw[..k - 1].iter().map(|x| x % q).collect();
        for check in sp_conjugation_identities(k, modulus, t, &a).unwrap() {
            prop_assert!(check.holds, "{} fails for t = {t}, a = {a:?}", check.name);
        }
    }

    #[test]
    fn group_axioms_on_sl2_z9(x in 0usize..648, y in 0usize..648, z in 0usize..648) {
        static G: OnceLock<GroupTable> = OnceLock::new();
        let g = G.get_or_init(|| build_sl(2, 3, 2, B).unwrap());
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(g.inv(x), x), g.identity());
        for &s in g.generators() {
            prop_assert!(g.mul(s, x) < g.order());
        }
    }

    #[test]
    fn mixing_holds_for_any_seed(seed in any::<u64>()) {
        static G: OnceLock<(GroupTable, u64)> = OnceLock::new();
        let (g, m) = G.get_or_init(|| {
            let b = built(build_alt(5, B).unwrap());
            let m = min_nontrivial_degree(&b.table).unwrap();
            (b.g, m)
        });
        let tol = Tolerances::default();
        let pairs = mixing_suite(g, *m, 5, seed, Exec::Sequential, tol).unwrap();
        prop_assert_eq!(pairs.failures, 0);
        let sets = set_mixing_suite(g, *m, 5, seed, Exec::Sequential, tol).unwrap();
        prop_assert_eq!(sets.failures, 0);
    }

    #[test]
    fn random_commuting_families_decompose(
        pattern in prop::collection::vec((0u8..3, 0u8..2), 2..9),
        shuffle in any::<u64>(),
    ) {
        let d = pattern.len();
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let diag = |vals: Vec<Complex64>| DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vals));
        let s1 = diag(pattern.iter().map(|&(a, _)| w.powu(a as u32)).collect());
        let s2 = diag(pattern.iter().map(|&(_, b)| if b == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(-1.0, 0.0) }).collect());
        let mut images: Vec<usize> = (0..d).collect();
        let mut state = shuffle;
        for i in (1..d).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (state >> 33) as usize % (i + 1));
        }
        let u = unitary_perm(d, &images);
        let family: Vec<_> = [s1, s2].iter().map(|s| &u * s * u.adjoint()).collect();
        let dec = root_decomposition(&family, 1e-8).unwrap();
        let mut distinct = pattern.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assert_eq!(dec.len(), distinct.len());
        prop_assert_eq!(dec.dimensions().iter().sum::<usize>(), d);
        prop_assert!(dec.orthogonality_defect() <= 1e-8);
        prop_assert!(dec.completeness_defect() <= 1e-8);
        prop_assert!(dec.reconstruction_defect(&family) <= 1e-7);
    }
}
