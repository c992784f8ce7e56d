//! Exact character tables by Dixon's modular method.
//!
//! The class-multiplication matrices `M_j[i][k] = a(i, j, k)` share a basis
//! of eigenvectors, one per irreducible character `chi`, namely the central
//! character `w_i = |C_i| chi(g_i) / chi(1)`. Working modulo a prime
//! `l = 1 (mod exponent)` with `l > 2 sqrt|G|`, the eigenvectors are found
//! by splitting eigenspaces, the degree is recovered from the orthogonality
//! relation, and each value is lifted to a multiplicity vector over the
//! complex roots of unity by a discrete Fourier inversion over the mod-`l`
//! roots of unity.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::fp::{self, Fp};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::groups::{ClassData, GroupDescriptor, GroupTable};
use crate::modring::{gcd, is_prime, MAX_MODULUS};

pub const MAX_CLASSES: usize = 200;
pub const MAX_ORDER: usize = 100_000;
const DEFAULT_SEED: u64 = 0x5eed_d1c0;

/// A character value `sum_t m_t zeta_e^t` stored as `(t, m_t)` pairs with
/// `m_t > 0`, `t` ascending.
pub type CharValue = Vec<(u32, u32)>;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    descriptor: GroupDescriptor,
    order: u64,
    exponent: u64,
    working_prime: u64,
    class_sizes: Vec<u64>,
    inverse_class: Vec<usize>,
    degrees: Vec<u64>,
    /// `values[chi][class]`
    values: Vec<Vec<CharValue>>,
    kernels: Vec<Vec<usize>>,
}

/// Serializable view of a table.
#[derive(Debug, Clone, Serialize)]
pub struct TableSummary {
    pub group: GroupDescriptor,
    pub exponent: u64,
    pub class_sizes: Vec<u64>,
    pub degrees: Vec<u64>,
    pub kernels: Vec<Vec<usize>>,
    /// `values[chi][class]` as `[t, m_t]` pairs over the `exponent`-th roots.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Vec<CharValue>>>,
}

impl CharacterTable {
    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    /// Number of irreducible characters.
    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn working_prime(&self) -> u64 {
        self.working_prime
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.degrees[chi]
    }

    pub fn value_terms(&self, chi: usize, class: usize) -> &CharValue {
        &self.values[chi][class]
    }

    /// Dense multiplicity vector `(m_0, ..., m_{e-1})`.
    pub fn multiplicities(&self, chi: usize, class: usize) -> Vec<u32> {
        let mut out = vec![0; self.exponent as usize];
        for &(t, m) in &self.values[chi][class] {
            out[t as usize] = m;
        }
        out
    }

    pub fn multiplicity(&self, chi: usize, class: usize, t: u64) -> u32 {
        let t = (t % self.exponent) as u32;
        self.values[chi][class]
            .iter()
            .find(|&&(s, _)| s == t)
            .map_or(0, |&(_, m)| m)
    }

    pub fn value(&self, chi: usize, class: usize) -> Complex64 {
        let e = self.exponent as f64;
        self.values[chi][class]
            .iter()
            .map(|&(t, m)| Complex64::from_polar(m as f64, std::f64::consts::TAU * t as f64 / e))
            .sum()
    }

    /// Classes on which the character equals its degree.
    pub fn kernel(&self, chi: usize) -> &[usize] {
        &self.kernels[chi]
    }

    pub fn is_trivial(&self, chi: usize) -> bool {
        self.kernels[chi].len() == self.r()
    }

    /// Index of the trivial character (always 0 after sorting).
    pub fn trivial_index(&self) -> usize {
        (0..self.r()).find(|&c| self.is_trivial(c)).unwrap_or(0)
    }

    /// Largest deviation in the row and column orthogonality relations,
    /// evaluated in complex arithmetic and normalised by `|G|`.
    pub fn orthogonality_defect(&self) -> (f64, f64) {
        let r = self.r();
        let n = self.order as f64;
        let vals: Vec<Vec<Complex64>> =
            (0..r).map(|c| (0..r).map(|k| self.value(c, k)).collect()).collect();
        let mut row: f64 = 0.0;
        for a in 0..r {
            for b in 0..r {
                let s: Complex64 = (0..r)
                    .map(|k| vals[a][k] * vals[b][k].conj() * self.class_sizes[k] as f64)
                    .sum();
                let expect = if a == b { n } else { 0.0 };
                row = row.max((s - expect).norm() / n);
            }
        }
        let mut col: f64 = 0.0;
        for k in 0..r {
            for l in 0..r {
                let s: Complex64 = (0..r).map(|c| vals[c][k] * vals[c][l].conj()).sum();
                let expect = if k == l { n / self.class_sizes[k] as f64 } else { 0.0 };
                col = col.max((s - expect).norm() / n);
            }
        }
        (row, col)
    }

    pub fn summary(&self, full: bool) -> TableSummary {
        TableSummary {
            group: self.descriptor.clone(),
            exponent: self.exponent,
            class_sizes: self.class_sizes.clone(),
            degrees: self.degrees.clone(),
            kernels: self.kernels.clone(),
            values: full.then(|| self.values.clone()),
        }
    }

    /// Class index of the inverse of class `k`'s elements.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse_class[k]
    }
}

/// Smallest prime `l = 1 (mod e)` with `l^2 > 4 |G|`.
pub fn working_prime(exponent: u64, order: u64) -> Result<u64> {
    let fail = Error::PrimeSearchFailed { exponent, order };
    let mut c = 1u64;
    loop {
        let l = c.checked_mul(exponent).and_then(|x| x.checked_add(1)).ok_or(fail.clone())?;
        if l >= MAX_MODULUS {
            return Err(fail);
        }
        if (l as u128) * (l as u128) > 4 * order as u128 && is_prime(l) {
            return Ok(l);
        }
        c += 1;
    }
}

pub fn character_table(g: &GroupTable, classes: &ClassData) -> Result<CharacterTable> {
    character_table_with(g, classes, DEFAULT_SEED, Exec::default())
}

/// As [`character_table`] with an explicit seed for the random class-matrix
/// combinations. The result does not depend on the seed or the schedule.
pub fn character_table_with(
    g: &GroupTable,
    classes: &ClassData,
    seed: u64,
    exec: Exec,
) -> Result<CharacterTable> {
    let r = classes.num_classes();
    let n = g.order();
    if r > MAX_CLASSES {
        return Err(Error::TooLarge { what: format!("{r} conjugacy classes"), budget: MAX_CLASSES as u64 });
    }
    if n > MAX_ORDER {
        return Err(Error::TooLarge { what: format!("group of order {n}"), budget: MAX_ORDER as u64 });
    }
    let order = n as u64;
    let e = classes.exponent();
    let l = working_prime(e, order)?;
    let f = Fp::new(l);

    let vectors = common_eigenvectors(&f, classes, seed, exec)?;
    if vectors.len() != r {
        return Err(Error::CharacterTable(format!(
            "found {} common eigenvectors for {r} classes",
            vectors.len()
        )));
    }

    let zeta_l = f.pow(f.primitive_root(), (l - 1) / e);
    let sizes = classes.sizes();
    let inv_size: Vec<u64> = sizes.iter().map(|&s| f.inv(s % l)).collect();

    let mut chars: Vec<(u64, Vec<CharValue>)> = Vec::with_capacity(r);
    for w in &vectors {
        // |G| / d^2 = sum_k w_k w_{k'} / |C_k|
        let s = (0..r).fold(0, |acc, k| {
            f.add(acc, f.mul(f.mul(w[k], w[classes.inverse_class(k)]), inv_size[k]))
        });
        if s == 0 {
            return Err(Error::CharacterTable("degenerate eigenvector".into()));
        }
        let d2 = f.mul(order % l, f.inv(s));
        let d = (1..=isqrt(order))
            .find(|&d| d * d % l == d2)
            .ok_or_else(|| Error::CharacterTable("degree is not a square root".into()))?;
        let theta: Vec<u64> = (0..r).map(|k| f.mul(f.mul(d % l, w[k]), inv_size[k])).collect();
        let row = (0..r)
            .map(|k| lift_value(&f, classes, &theta, k, d, e, zeta_l))
            .collect::<Result<Vec<_>>>()?;
        chars.push((d, row));
    }
    chars.sort();

    let degrees: Vec<u64> = chars.iter().map(|c| c.0).collect();
    let sum_sq: u64 = degrees.iter().map(|d| d * d).sum();
    if sum_sq != order {
        return Err(Error::CharacterTable(format!("sum of squared degrees {sum_sq} != {order}")));
    }
    let kernels = chars
        .iter()
        .map(|(d, row)| {
            (0..r).filter(|&k| row[k].as_slice() == [(0, *d as u32)]).collect()
        })
        .collect();
    Ok(CharacterTable {
        descriptor: g.descriptor().clone(),
        order,
        exponent: e,
        working_prime: l,
        class_sizes: sizes.to_vec(),
        inverse_class: (0..r).map(|k| classes.inverse_class(k)).collect(),
        degrees,
        values: chars.into_iter().map(|c| c.1).collect(),
        kernels,
    })
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Recovers the multiplicities of `chi(g_k)` over the `o`-th roots of unity,
/// `o` the order of `g_k`, from the mod-`l` values on the powers of `g_k`.
fn lift_value(
    f: &Fp,
    classes: &ClassData,
    theta: &[u64],
    k: usize,
    d: u64,
    e: u64,
    zeta_l: u64,
) -> Result<CharValue> {
    let o = classes.element_order(k);
    let zeta_o = f.pow(zeta_l, e / o);
    let zeta_inv = f.inv(zeta_o);
    let o_inv = f.inv(o % f.modulus());
    let powers: Vec<u64> = (0..o).map(|s| theta[classes.power_class(k, s)]).collect();
    let mut out = Vec::new();
    let mut total = 0u64;
    for u in 0..o {
        let step = f.pow(zeta_inv, u);
        let mut z = 1u64;
        let mut acc = 0u64;
        for &v in &powers {
            acc = f.add(acc, f.mul(v, z));
            z = f.mul(z, step);
        }
        let m = f.mul(acc, o_inv);
        if m > d {
            return Err(Error::CharacterTable(format!(
                "multiplicity {m} exceeds degree {d} at class {k}"
            )));
        }
        if m > 0 {
            out.push(((u * (e / o)) as u32, m as u32));
            total += m;
        }
    }
    if total != d {
        return Err(Error::CharacterTable(format!("multiplicities at class {k} sum to {total}, not {d}")));
    }
    Ok(out)
}

/// Common eigenvectors of the class matrices, normalised to `w_0 = 1`.
fn common_eigenvectors(f: &Fp, classes: &ClassData, seed: u64, exec: Exec) -> Result<Vec<Vec<u64>>> {
    let r = classes.num_classes();
    let l = f.modulus();
    let class_matrix = |j: usize| -> Vec<u64> {
        let mut m = vec![0u64; r * r];
        for i in 0..r {
            for k in 0..r {
                m[i * r + k] = classes.coefficient(i, j, k) as u64 % l;
            }
        }
        m
    };

    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect();
    let mut spaces = vec![identity];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let random_rounds = 4;
    let mut round = 0;
    let mut next_class = 1;
    while spaces.iter().any(|s| s.len() > 1) {
        let t = if round < random_rounds {
            let coeffs: Vec<u64> = (0..r).map(|_| rng.random_range(0..l)).collect();
            let mut t = vec![0u64; r * r];
            for (j, &c) in coeffs.iter().enumerate().skip(1) {
                let m = class_matrix(j);
                for (x, &y) in t.iter_mut().zip(&m) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            t
        } else if next_class < r {
            next_class += 1;
            class_matrix(next_class - 1)
        } else {
            return Err(Error::CharacterTable("class matrices do not split the class algebra".into()));
        };
        round += 1;
        let split_seed: u64 = rng.random();
        let results = exec.map(spaces.len(), |si| {
            let space = &spaces[si];
            if space.len() == 1 {
                return Ok(vec![space.clone()]);
            }
            let mut local = ChaCha8Rng::seed_from_u64(split_seed ^ si as u64);
            split_space(f, &t, r, space, &mut local)
        });
        let mut next = Vec::new();
        for res in results {
            next.extend(res?);
        }
        spaces = next;
    }

    spaces
        .into_iter()
        .map(|s| {
            let v = &s[0];
            if v[0] == 0 {
                return Err(Error::CharacterTable("eigenvector vanishes at the identity class".into()));
            }
            let inv = f.inv(v[0]);
            Ok(v.iter().map(|&x| f.mul(x, inv)).collect())
        })
        .collect()
}

/// Splits an invariant subspace (RREF basis rows) into eigenspaces of `t`.
fn split_space<R: Rng>(
    f: &Fp,
    t: &[u64],
    r: usize,
    basis: &[Vec<u64>],
    rng: &mut R,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let s = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).unwrap())
        .collect();
    // restricted[u][v]: coordinate u of t * basis_v
    let mut restricted = vec![0u64; s * s];
    for (v, b) in basis.iter().enumerate() {
        for (u, &pc) in pivots.iter().enumerate() {
            let row = &t[pc * r..(pc + 1) * r];
            let val = row.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
            restricted[u * s + v] = val;
        }
    }
    let eigenvalues = fp::roots(f, &fp::charpoly(f, &restricted, s), rng);
    if eigenvalues.len() <= 1 {
        return Ok(vec![basis.to_vec()]);
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in eigenvalues {
        let mut shifted = restricted.clone();
        for i in 0..s {
            shifted[i * s + i] = f.sub(shifted[i * s + i], lambda);
        }
        let kernel = fp::null_space(f, &shifted, s);
        total += kernel.len();
        let mut ambient: Vec<Vec<u64>> = kernel
            .iter()
            .map(|x| {
                let mut v = vec![0u64; r];
                for (coef, b) in x.iter().zip(basis) {
                    if *coef != 0 {
                        for (vi, &bi) in v.iter_mut().zip(b) {
                            *vi = f.add(*vi, f.mul(*coef, bi));
                        }
                    }
                }
                v
            })
            .collect();
        fp::rref(f, &mut ambient);
        out.push(ambient);
    }
    if total != s {
        return Err(Error::CharacterTable("class matrix is not diagonalisable".into()));
    }
    Ok(out)
}

/// Degrees only, sorted ascending.
pub fn irreducible_degrees(g: &GroupTable, classes: &ClassData) -> Result<Vec<u64>> {
    Ok(character_table(g, classes)?.degrees().to_vec())
}

/// True when `t` indexes a primitive `p^n`-th root among the `e`-th roots.
pub fn is_primitive_prime_power_index(t: u64, e: u64, p: u64, n: u32) -> bool {
    let q = p.pow(n);
    if !e.is_multiple_of(q) {
        return false;
    }
    let step = e / q;
    t.is_multiple_of(step) && gcd(t / step, p) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::*;

    const B: u64 = DEFAULT_ELEMENT_BUDGET;

    fn table(g: &GroupTable) -> CharacterTable {
        character_table(g, &ClassData::compute(g)).unwrap()
    }

    #[test]
    fn working_prime_choice() {
        // SL_2(F_3): e = 12, |G| = 24 -> l > 9.8 and l = 1 mod 12
        assert_eq!(working_prime(12, 24).unwrap(), 13);
        assert_eq!(working_prime(2, 4).unwrap(), 5);
        assert!(matches!(
            working_prime(1 << 30, 1 << 20),
            Err(Error::PrimeSearchFailed { .. })
        ));
    }

    #[test]
    fn known_degree_lists() {
        assert_eq!(table(&build_sl(2, 3, 1, B).unwrap()).degrees(), &[1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(
            table(&build_sl(2, 5, 1, B).unwrap()).degrees(),
            &[1, 2, 2, 3, 3, 4, 4, 5, 6]
        );
        assert_eq!(table(&build_abelian(&[4], B).unwrap()).degrees(), &[1, 1, 1, 1]);
        assert_eq!(table(&build_sym(4, B).unwrap()).degrees(), &[1, 1, 2, 3, 3]);
        assert_eq!(table(&build_quaternion().unwrap()).degrees(), &[1, 1, 1, 1, 2]);
    }

    #[test]
    fn trivial_character_first_with_full_kernel() {
        let t = table(&build_alt(5, B).unwrap());
        assert_eq!(t.trivial_index(), 0);
        assert_eq!(t.kernel(0).len(), t.r());
        assert_eq!((0..t.r()).filter(|&c| t.is_trivial(c)).count(), 1);
    }

    #[test]
    fn orthogonality_in_complex_evaluation() {
        for g in [
            build_sl(2, 3, 1, B).unwrap(),
            build_alt(5, B).unwrap(),
            build_abelian(&[3, 3], B).unwrap(),
            build_sl(2, 7, 1, B).unwrap(),
        ] {
            let t = table(&g);
            let (row, col) = t.orthogonality_defect();
            assert!(row < 1e-9 && col < 1e-9, "{} {row} {col}", g.descriptor().label());
        }
    }

    #[test]
    fn values_are_class_functions_of_degree_at_identity() {
        let t = table(&build_sl(2, 5, 1, B).unwrap());
        for c in 0..t.r() {
            assert_eq!(t.value_terms(c, 0), &vec![(0, t.degree(c) as u32)]);
            let dense = t.multiplicities(c, 3);
            assert_eq!(dense.iter().map(|&m| m as u64).sum::<u64>(), t.degree(c));
        }
    }

    #[test]
    fn seed_and_schedule_independence() {
        let g = build_sl(2, 7, 1, B).unwrap();
        let c = ClassData::compute(&g);
        let a = character_table_with(&g, &c, 1, Exec::Sequential).unwrap();
        let b = character_table_with(&g, &c, 99, Exec::default()).unwrap();
        assert_eq!(a.degrees(), b.degrees());
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn summary_json_shape() {
        let t = table(&build_abelian(&[2], B).unwrap());
        let v = serde_json::to_value(t.summary(false)).unwrap();
        assert_eq!(v["degrees"], serde_json::json!([1, 1]));
        assert_eq!(v["kernels"], serde_json::json!([[0, 1], [0]]));
        assert!(v.get("values").is_none());
        let v = serde_json::to_value(t.summary(true)).unwrap();
        assert_eq!(v["values"][1][1], serde_json::json!([[1, 1]]));
    }

    #[test]
    fn primitive_index() {
        // e = 12, primitive 3rd roots are t = 4, 8
        assert!(is_primitive_prime_power_index(4, 12, 3, 1));
        assert!(is_primitive_prime_power_index(8, 12, 3, 1));
        assert!(!is_primitive_prime_power_index(0, 12, 3, 1));
        assert!(!is_primitive_prime_power_index(6, 12, 3, 1));
    }
}
