//! Joint eigenspace ("root") decomposition of a commuting family of
//! unitary matrices, and the action of a normalising unitary on roots.
//!
//! A root `r` assigns to every matrix `S` of the family a scalar `r(S)`
//! such that `V(r) = {v : S v = r(S) v for all S}` is non-zero. The root
//! spaces are orthogonal and span the ambient space.

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::Matrix;

pub type CMatrix = DMatrix<Complex64>;

const MAX_ATTEMPTS: u64 = 8;

#[derive(Debug, Clone)]
pub struct Root {
    /// `r(S)` for each matrix of the family, in family order.
    pub values: Vec<Complex64>,
    /// Orthonormal basis of `V(r)` as columns.
    pub basis: CMatrix,
}

impl Root {
    pub fn dimension(&self) -> usize {
        self.basis.ncols()
    }

    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }
}

#[derive(Debug, Clone)]
pub struct RootDecomposition {
    ambient: usize,
    roots: Vec<Root>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSummary {
    pub ambient_dimension: usize,
    pub dimensions: Vec<usize>,
    /// `r(S)` as `[re, im]` pairs per root.
    pub values: Vec<Vec<[f64; 2]>>,
}

impl RootDecomposition {
    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.roots.iter().map(Root::dimension).collect()
    }

    /// Largest `|<u, v>|` between basis vectors of different roots.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.roots.iter().enumerate() {
            for b in &self.roots[i + 1..] {
                let gram = a.basis.adjoint() * &b.basis;
                worst = gram.iter().fold(worst, |acc, z| acc.max(z.norm()));
            }
        }
        worst
    }

    /// `|| I - sum_r P_r ||` in the max-entry norm.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = CMatrix::zeros(self.ambient, self.ambient);
        for r in &self.roots {
            sum += r.projector();
        }
        let id = CMatrix::identity(self.ambient, self.ambient);
        (id - sum).iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// Largest `|| S - sum_r r(S) P_r ||` (Frobenius) over the family.
    pub fn reconstruction_defect(&self, family: &[CMatrix]) -> f64 {
        family
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut rebuilt = CMatrix::zeros(self.ambient, self.ambient);
                for r in &self.roots {
                    rebuilt += r.projector() * r.values[i];
                }
                (s - rebuilt).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Index of the root whose values match `values` within `tol`.
    pub fn find_root(&self, values: &[Complex64], tol: f64) -> Option<usize> {
        self.roots.iter().position(|r| {
            r.values.len() == values.len()
                && r.values.iter().zip(values).all(|(a, b)| (a - b).norm() <= tol)
        })
    }

    pub fn summary(&self) -> RootSummary {
        RootSummary {
            ambient_dimension: self.ambient,
            dimensions: self.dimensions(),
            values: self
                .roots
                .iter()
                .map(|r| r.values.iter().map(|z| [round12(z.re), round12(z.im)]).collect())
                .collect(),
        }
    }
}

fn round12(x: f64) -> f64 {
    let y = (x * 1e12).round() / 1e12;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

fn max_entry(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

fn check_family(family: &[CMatrix], tol: f64) -> Result<usize> {
    let d = family.first().map_or(0, |m| m.nrows());
    if d == 0 {
        return Err(Error::InvalidParameters("empty family".into()));
    }
    for (i, s) in family.iter().enumerate() {
        if s.nrows() != d || s.ncols() != d {
            return Err(Error::InvalidParameters(format!("matrix {i} is not {d}x{d}")));
        }
        let id = CMatrix::identity(d, d);
        if max_entry(&(s.adjoint() * s - id)) > tol {
            return Err(Error::NotUnitary { index: i, tolerance: tol });
        }
    }
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            let dev = max_entry(&(a * b - b * a));
            if dev > tol {
                return Err(Error::NotCommuting(dev));
            }
        }
    }
    Ok(d)
}

/// Decomposes the ambient space into the root spaces of the family.
///
/// A random real combination of the Hermitian parts `(S + S*)/2` and
/// `(S - S*)/2i` of all members is diagonalised; its eigenspaces (grouped at
/// relative tolerance `1e-8`) are the root spaces with probability one. Both
/// parts are needed: `S` and `S*` have the same Hermitian part, so roots that
/// differ only by complex conjugation would merge without the second one.
pub fn root_decomposition(family: &[CMatrix], tolerance: f64) -> Result<RootDecomposition> {
    root_decomposition_seeded(family, tolerance, 0x2007)
}

pub fn root_decomposition_seeded(family: &[CMatrix], tolerance: f64, seed: u64) -> Result<RootDecomposition> {
    let d = check_family(family, tolerance)?;
    let check_tol = tolerance.max(1e-7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = Complex64::new(0.0, 1.0);
    for _ in 0..MAX_ATTEMPTS {
        let mut h = CMatrix::zeros(d, d);
        for s in family {
            let a: f64 = rng.random_range(-1.0..1.0);
            let b: f64 = rng.random_range(-1.0..1.0);
            let sa = s.adjoint();
            h += (s + &sa) * Complex64::new(a / 2.0, 0.0);
            h += (s - &sa) * (Complex64::new(b / 2.0, 0.0) / i);
        }
        let eig = h.symmetric_eigen();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&x, &y| eig.eigenvalues[x].partial_cmp(&eig.eigenvalues[y]).unwrap());
        let scale = eig.eigenvalues.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));

        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (pos, &idx) in order.iter().enumerate() {
            let new_group = pos == 0
                || eig.eigenvalues[idx] - eig.eigenvalues[order[pos - 1]] > 1e-8 * scale;
            if new_group {
                groups.push(vec![idx]);
            } else {
                groups.last_mut().unwrap().push(idx);
            }
        }

        let mut roots = Vec::with_capacity(groups.len());
        let mut ok = true;
        for cols in &groups {
            let basis = CMatrix::from_fn(d, cols.len(), |r, c| eig.eigenvectors[(r, cols[c])]);
            let values: Vec<Complex64> = family
                .iter()
                .map(|s| (basis.adjoint() * s * &basis).trace() / cols.len() as f64)
                .collect();
            let residual = family
                .iter()
                .zip(&values)
                .map(|(s, &v)| max_entry(&(s * &basis - &basis * v)))
                .fold(0.0, f64::max);
            if residual > check_tol {
                ok = false;
                break;
            }
            roots.push(Root { values, basis });
        }
        if !ok {
            continue;
        }
        // two eigenvalue clusters of the combination may share a root
        let mut merged: Vec<Root> = Vec::new();
        for root in roots {
            match merged.iter_mut().find(|m| {
                m.values.iter().zip(&root.values).all(|(a, b)| (a - b).norm() <= check_tol)
            }) {
                Some(m) => {
                    let cols: Vec<_> = m.basis.column_iter().chain(root.basis.column_iter()).collect();
                    m.basis = CMatrix::from_columns(&cols);
                }
                None => merged.push(root),
            }
        }
        merged.sort_by(|a, b| compare_values(&a.values, &b.values));
        return Ok(RootDecomposition { ambient: d, roots: merged });
    }
    Err(Error::CharacterTable("joint diagonalisation did not converge".into()))
}

/// Orders roots by the arguments of their values, `1` first.
fn compare_values(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    let key = |z: &Complex64| {
        let t = z.arg().rem_euclid(std::f64::consts::TAU);
        let t = if std::f64::consts::TAU - t < 1e-9 { 0.0 } else { t };
        ((t * 1e9).round() as i64, (z.norm() * 1e9).round() as i64)
    };
    a.iter().map(key).cmp(b.iter().map(key))
}

#[derive(Debug, Clone)]
pub struct ConjugatedRoot {
    /// Index of `r_h` in the decomposition.
    pub index: usize,
    /// `r_h(S) = r(h S h^-1)`.
    pub values: Vec<Complex64>,
}

/// The root `r_h(S) = r(h S h^-1)` of the conjugated root `r`, together
/// with the check `V(r_h) = h^-1 V(r)` by projector comparison.
pub fn conjugated_root(
    family: &[CMatrix],
    decomposition: &RootDecomposition,
    h: &CMatrix,
    root: usize,
    tolerance: f64,
) -> Result<ConjugatedRoot> {
    let d = decomposition.ambient_dimension();
    if h.nrows() != d || h.ncols() != d {
        return Err(Error::InvalidParameters(format!("h is not {d}x{d}")));
    }
    if max_entry(&(h.adjoint() * h - CMatrix::identity(d, d))) > tolerance {
        return Err(Error::NotUnitary { index: 0, tolerance });
    }
    let src = decomposition
        .roots()
        .get(root)
        .ok_or_else(|| Error::InvalidParameters(format!("no root {root}")))?;
    let moved = h.adjoint() * &src.basis;
    let values: Vec<Complex64> = family
        .iter()
        .map(|s| (moved.adjoint() * s * &moved).trace() / moved.ncols() as f64)
        .collect();
    let check_tol = tolerance.max(1e-7);
    let index = decomposition.find_root(&values, check_tol).ok_or_else(|| {
        Error::NotNormalizing(format!("h^-1 V(r_{root}) is not a root space of the family"))
    })?;
    let target = &decomposition.roots()[index];
    let diff = &moved * moved.adjoint() - target.projector();
    if target.dimension() != moved.ncols() || max_entry(&diff) > check_tol {
        return Err(Error::NotNormalizing(format!(
            "h^-1 V(r_{root}) differs from V(r_{index})"
        )));
    }
    Ok(ConjugatedRoot { index, values })
}

/// Nonzero vectors of `(Z/q)^k` in lexicographic order.
pub fn nonzero_vectors(k: usize, q: u64) -> Vec<Vec<u32>> {
    let total = (q as usize).pow(k as u32);
    (1..total)
        .map(|mut x| {
            let mut v = vec![0u32; k];
            for slot in v.iter_mut().rev() {
                *slot = (x % q as usize) as u32;
                x /= q as usize;
            }
            v
        })
        .collect()
}

/// Permutation matrix of `m` acting on the nonzero vectors of `(Z/q)^k`
/// (ordered as in [`nonzero_vectors`]): column `v` has its `1` in row `m v`.
pub fn permutation_representation(m: &Matrix) -> Result<CMatrix> {
    let md = m.modulus();
    if !md.is_unit(m.det()) {
        return Err(Error::InvalidParameters("matrix is not invertible".into()));
    }
    let vectors = nonzero_vectors(m.dim(), md.value());
    let index = |v: &[u32]| {
        let x = v.iter().fold(0usize, |acc, &c| acc * md.value() as usize + c as usize);
        x - 1
    };
    let n = vectors.len();
    let mut out = CMatrix::zeros(n, n);
    for (col, v) in vectors.iter().enumerate() {
        out[(index(&m.apply(v)), col)] = Complex64::new(1.0, 0.0);
    }
    Ok(out)
}
