//! Minimal degrees read off a character table, and a floating-point
//! cross-check of the degrees through the regular representation.

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dixon::CharacterTable;
use crate::error::{Error, Result};
use crate::groups::{ClassData, GroupTable};

/// Minimum degree of a non-trivial irreducible character, `m(G)`.
pub fn min_nontrivial_degree(table: &CharacterTable) -> Result<u64> {
    (0..table.r())
        .filter(|&c| !table.is_trivial(c))
        .map(|c| table.degree(c))
        .min()
        .ok_or(Error::TrivialGroup)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaithfulDegree {
    /// Minimum total degree of a set of irreducibles with trivial common
    /// kernel, `m_f(G)`.
    pub value: u64,
    /// Character indices of one minimising set.
    pub characters: Vec<usize>,
    /// Minimum degree of a single faithful irreducible, if there is one.
    pub single_irreducible: Option<u64>,
    pub nodes: u64,
}

type Bits = Vec<u64>;

fn bitset(classes: &[usize], words: usize) -> Bits {
    let mut b = vec![0u64; words];
    for &k in classes {
        b[k / 64] |= 1 << (k % 64);
    }
    b
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Branch and bound over subsets of non-trivial irreducibles sorted by
/// degree. A set is faithful when the intersection of its kernels is the
/// identity class alone. Repeating a character never shrinks the
/// intersection, so subsets suffice.
pub fn min_faithful_degree(table: &CharacterTable) -> Result<FaithfulDegree> {
    let r = table.r();
    if r <= 1 {
        return Err(Error::TrivialGroup);
    }
    let words = r.div_ceil(64);
    let identity_only = bitset(&[0], words);
    let mut chars: Vec<usize> = (0..r).filter(|&c| !table.is_trivial(c)).collect();
    chars.sort_by_key(|&c| (table.degree(c), c));
    let kernels: Vec<Bits> = chars.iter().map(|&c| bitset(table.kernel(c), words)).collect();
    // suffix[i]: intersection of kernels[i..]
    let mut suffix = vec![bitset(&(0..r).collect::<Vec<_>>(), words); chars.len() + 1];
    for i in (0..chars.len()).rev() {
        suffix[i] = and(&suffix[i + 1], &kernels[i]);
    }

    struct Search<'a> {
        degrees: Vec<u64>,
        kernels: &'a [Bits],
        suffix: &'a [Bits],
        target: &'a Bits,
        best: u64,
        best_set: Vec<usize>,
        stack: Vec<usize>,
        nodes: u64,
    }
    impl Search<'_> {
        fn go(&mut self, start: usize, sum: u64, current: &Bits) {
            self.nodes += 1;
            if current == self.target {
                if sum < self.best {
                    self.best = sum;
                    self.best_set = self.stack.clone();
                }
                return;
            }
            if &and(current, &self.suffix[start]) != self.target {
                return;
            }
            for i in start..self.degrees.len() {
                if sum + self.degrees[i] >= self.best {
                    break;
                }
                let next = and(current, &self.kernels[i]);
                if &next == current {
                    continue;
                }
                self.stack.push(i);
                self.go(i + 1, sum + self.degrees[i], &next);
                self.stack.pop();
            }
        }
    }

    let mut search = Search {
        degrees: chars.iter().map(|&c| table.degree(c)).collect(),
        kernels: &kernels,
        suffix: &suffix,
        target: &identity_only,
        best: u64::MAX,
        best_set: Vec::new(),
        stack: Vec::new(),
        nodes: 0,
    };
    let all = suffix[chars.len()].clone();
    search.go(0, 0, &all);
    if search.best == u64::MAX {
        return Err(Error::CharacterTable("irreducible kernels intersect non-trivially".into()));
    }
    let single = (0..r)
        .filter(|&c| table.kernel(c) == [0])
        .map(|c| table.degree(c))
        .min();
    let mut characters: Vec<usize> = search.best_set.iter().map(|&i| chars[i]).collect();
    characters.sort_unstable();
    Ok(FaithfulDegree { value: search.best, characters, single_irreducible: single, nodes: search.nodes })
}

/// Group elements (ordinals, ascending) in the kernel of character `chi`.
pub fn kernel_elements(table: &CharacterTable, classes: &ClassData, chi: usize) -> Vec<usize> {
    let ker = table.kernel(chi);
    let mut in_kernel = vec![false; classes.num_classes()];
    for &k in ker {
        in_kernel[k] = true;
    }
    (0..classes.group_order()).filter(|&x| in_kernel[classes.class_of(x)]).collect()
}

pub const FLOAT_ORACLE_LIMIT: usize = 200;

/// Irreducible degrees from the spectrum of a random central element
/// acting by left multiplication on the group algebra.
///
/// The element is `z = sum_k c_k K_k` with `c_{k^-1} = conj(c_k)`, so the
/// operator is Hermitian. It acts on the `chi`-isotypic block of the regular
/// representation by the scalar `sum_k c_k |C_k| chi(g_k) / chi(1)` with
/// multiplicity `chi(1)^2`. Returns sorted degrees.
pub fn regular_representation_degrees(g: &GroupTable, classes: &ClassData, seed: u64) -> Result<Vec<u64>> {
    let n = g.order();
    if n > FLOAT_ORACLE_LIMIT {
        return Err(Error::TooLarge { what: format!("group of order {n}"), budget: FLOAT_ORACLE_LIMIT as u64 });
    }
    let r = classes.num_classes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = vec![Complex64::new(0.0, 0.0); r];
    for k in 0..r {
        let ki = classes.inverse_class(k);
        if ki < k {
            continue;
        }
        let re = rng.random_range(-1.0..1.0);
        if ki == k {
            c[k] = Complex64::new(re, 0.0);
        } else {
            let im = rng.random_range(-1.0..1.0);
            c[k] = Complex64::new(re, im);
            c[ki] = c[k].conj();
        }
    }
    let m = DMatrix::from_fn(n, n, |x, y| c[classes.class_of(g.mul(x, g.inv(y)))]);
    let eig = m.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let scale = vals.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let mut degrees = Vec::new();
    let mut start = 0;
    for i in 1..=vals.len() {
        if i == vals.len() || vals[i] - vals[i - 1] > 1e-8 * scale {
            let mult = (i - start) as u64;
            let d = (mult as f64).sqrt().round() as u64;
            if d * d != mult {
                return Err(Error::CharacterTable(format!(
                    "eigenvalue multiplicity {mult} is not a square; eigenvalues collided"
                )));
            }
            degrees.push(d);
            start = i;
        }
    }
    degrees.sort_unstable();
    Ok(degrees)
}
