//! The even-weight code `{v in F_2^m : v_1 + ... + v_m = 0}` and its
//! subspaces invariant under coordinate permutations from `Alt_m`.
//!
//! Vectors are bitmasks: bit `i` is coordinate `i`.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct EvenWeightCode {
    m: usize,
    vectors: Vec<u32>,
}

impl EvenWeightCode {
    pub fn length(&self) -> usize {
        self.m
    }

    pub fn vectors(&self) -> &[u32] {
        &self.vectors
    }

    pub fn dimension(&self) -> usize {
        self.m.saturating_sub(1)
    }

    pub fn contains(&self, v: u32) -> bool {
        v < (1 << self.m) && v.count_ones().is_multiple_of(2)
    }
}

pub fn build_even_weight_code(m: usize) -> Result<EvenWeightCode> {
    if m == 0 || m > 16 {
        return Err(Error::InvalidParameters("code length must be in 1..=16".into()));
    }
    let vectors = (0u32..1 << m).filter(|v| v.count_ones() % 2 == 0).collect();
    Ok(EvenWeightCode { m, vectors })
}

/// Applies a coordinate permutation given by images.
fn permute(v: u32, images: &[usize]) -> u32 {
    let mut out = 0;
    for (i, &img) in images.iter().enumerate() {
        if v >> i & 1 == 1 {
            out |= 1 << img;
        }
    }
    out
}

/// Reduced row-echelon basis over `F_2`; the canonical form of a subspace.
fn echelon(vectors: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for v in vectors {
        let mut x = v;
        for &b in &basis {
            let lead = 31 - b.leading_zeros();
            if x >> lead & 1 == 1 {
                x ^= b;
            }
        }
        if x != 0 {
            let lead = 31 - x.leading_zeros();
            for b in basis.iter_mut() {
                if *b >> lead & 1 == 1 {
                    *b ^= x;
                }
            }
            basis.push(x);
        }
    }
    basis.sort_unstable_by(|a, b| b.cmp(a));
    basis
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subspace {
    /// Reduced echelon basis, leading bits descending.
    pub basis: Vec<u32>,
}

impl Subspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// All `2^dim` vectors.
    pub fn span(&self) -> Vec<u32> {
        let mut out = vec![0u32];
        for &b in &self.basis {
            let len = out.len();
            for i in 0..len {
                out.push(out[i] ^ b);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantScan {
    pub m: usize,
    pub code_dimension: usize,
    pub subspaces: Vec<Subspace>,
    /// `min dim(L) - dim(K)` over invariant `K != L`.
    pub min_rank: usize,
}

/// Enumerates the `Alt_m`-invariant subspaces of the code.
///
/// Every invariant subspace is the sum of the orbit spans of its vectors,
/// so the scan starts from the orbit spans and closes under pairwise sums.
pub fn alt_invariant_subgroup_scan(code: &EvenWeightCode) -> Result<InvariantScan> {
    let m = code.length();
    if m > 12 {
        return Err(Error::InvalidParameters("invariant scan supports m <= 12".into()));
    }
    // 3-cycles (0 1 i) generate Alt_m
    let gens: Vec<Vec<usize>> = (2..m)
        .map(|i| {
            let mut img: Vec<usize> = (0..m).collect();
            img[0] = 1;
            img[1] = i;
            img[i] = 0;
            img
        })
        .collect();

    let mut orbit_spans: BTreeSet<Subspace> = BTreeSet::new();
    let mut done: HashSet<u32> = HashSet::new();
    for &v in code.vectors() {
        if done.contains(&v) {
            continue;
        }
        let mut orbit = vec![v];
        let mut seen: HashSet<u32> = HashSet::from([v]);
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &gens {
                let y = permute(x, g);
                if seen.insert(y) {
                    orbit.push(y);
                }
            }
        }
        done.extend(orbit.iter().copied());
        orbit_spans.insert(Subspace { basis: echelon(orbit) });
    }

    let mut all: BTreeSet<Subspace> = orbit_spans.clone();
    loop {
        let current: Vec<Subspace> = all.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &orbit_spans {
                let sum = Subspace {
                    basis: echelon(a.basis.iter().chain(&b.basis).copied()),
                };
                if all.insert(sum) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }

    let dim = code.dimension();
    let min_rank = all
        .iter()
        .filter(|s| s.dimension() != dim)
        .map(|s| dim - s.dimension())
        .min()
        .unwrap_or(0);
    let mut subspaces: Vec<Subspace> = all.into_iter().collect();
    subspaces.sort_by_key(|s| (s.dimension(), s.basis.clone()));
    Ok(InvariantScan { m, code_dimension: dim, subspaces, min_rank })
}

/// True when the subspace is closed under the `Alt_m` generators and sums.
pub fn is_invariant(space: &Subspace, m: usize) -> bool {
    let span: HashSet<u32> = space.span().into_iter().collect();
    let closed_sum = span.iter().all(|&a| span.iter().all(|&b| span.contains(&(a ^ b))));
    let closed_alt = (2..m).all(|i| {
        let mut img: Vec<usize> = (0..m).collect();
        img[0] = 1;
        img[1] = i;
        img[i] = 0;
        span.iter().all(|&v| span.contains(&permute(v, &img)))
    });
    closed_sum && closed_alt
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_contents() {
        let c = build_even_weight_code(3).unwrap();
        assert_eq!(c.vectors(), &[0b000, 0b011, 0b101, 0b110]);
        assert_eq!(build_even_weight_code(7).unwrap().vectors().len(), 64);
        assert!(build_even_weight_code(8).unwrap().contains(0xff));
        // closed under coordinate permutation: weights are preserved
        let c = build_even_weight_code(6).unwrap();
        let swap = [1, 0, 2, 3, 4, 5];
        assert!(c.vectors().iter().all(|&v| c.contains(permute(v, &swap))));
    }

    #[test]
    fn scan_m7() {
        let scan = alt_invariant_subgroup_scan(&build_even_weight_code(7).unwrap()).unwrap();
        let dims: Vec<usize> = scan.subspaces.iter().map(|s| s.dimension()).collect();
        assert_eq!(dims, vec![0, 6]);
        assert_eq!(scan.min_rank, 6);
    }

    #[test]
    fn scan_m8() {
        let scan = alt_invariant_subgroup_scan(&build_even_weight_code(8).unwrap()).unwrap();
        let dims: Vec<usize> = scan.subspaces.iter().map(|s| s.dimension()).collect();
        assert_eq!(dims, vec![0, 1, 7]);
        assert_eq!(scan.subspaces[1].basis, vec![0xff]);
        assert_eq!(scan.min_rank, 6);
        for s in &scan.subspaces {
            assert!(is_invariant(s, 8));
        }
    }

    #[test]
    fn scan_m3_and_bound_hook() {
        let scan = alt_invariant_subgroup_scan(&build_even_weight_code(3).unwrap()).unwrap();
        assert!(scan.subspaces.iter().any(|s| s.dimension() == 0));
        assert!(scan.subspaces.iter().any(|s| s.dimension() == 2));
        for m in 7..=12 {
            let scan = alt_invariant_subgroup_scan(&build_even_weight_code(m).unwrap()).unwrap();
            assert!(scan.min_rank >= m - 2, "m = {m}");
        }
    }
}
