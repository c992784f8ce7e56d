//! Square matrices over `Z/p^n` and the named matrices used by the
//! root-function arguments for `SL_k` and `Sp_2k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::modring::Modulus;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    modulus: Modulus,
    entries: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[mod {}](", self.modulus.value())?;
        for r in 0..self.dim {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, ")")
    }
}

impl Matrix {
    pub fn from_entries(dim: usize, modulus: Modulus, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        let entries = entries.into_iter().map(|v| modulus.reduce(v as u64)).collect();
        Matrix { dim, modulus, entries }
    }

    pub fn from_signed(dim: usize, modulus: Modulus, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        let entries = entries.iter().map(|&v| modulus.reduce_signed(v)).collect();
        Matrix { dim, modulus, entries }
    }

    pub fn zero(dim: usize, modulus: Modulus) -> Self {
        Matrix { dim, modulus, entries: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize, modulus: Modulus) -> Self {
        let mut m = Self::zero(dim, modulus);
        for i in 0..dim {
            m.entries[i * dim + i] = 1 % modulus.value() as u32;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.dim + c] = self.modulus.reduce(v as u64);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let mut out = vec![0u32; self.dim * self.dim];
        mul_into(self.dim, self.modulus, &self.entries, &other.entries, &mut out);
        Matrix { dim: self.dim, modulus: self.modulus, entries: out }
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim;
        let mut out = vec![0u32; d * d];
        for r in 0..d {
            for c in 0..d {
                out[c * d + r] = self.entries[r * d + c];
            }
        }
        Matrix { dim: d, modulus: self.modulus, entries: out }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.dim, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let entries = self.entries.iter().map(|&v| self.modulus.mul(v, s)).collect();
        Matrix { dim: self.dim, modulus: self.modulus, entries }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.modulus.add(a, b))
            .collect();
        Matrix { dim: self.dim, modulus: self.modulus, entries }
    }

    /// Determinant by cofactor expansion; dimensions here are tiny.
    pub fn det(&self) -> u32 {
        det_rec(self.modulus, &self.entries, self.dim)
    }

    /// Inverse by Gauss–Jordan elimination with unit pivots.
    ///
    /// Over the local ring `Z/p^n` a matrix is invertible exactly when every
    /// elimination step finds a unit in the pivot column.
    pub fn inverse(&self) -> Result<Matrix> {
        let d = self.dim;
        let md = self.modulus;
        let mut a = self.entries.clone();
        let mut inv = Matrix::identity(d, md).entries;
        for col in 0..d {
            let pivot = (col..d).find(|&r| md.is_unit(a[r * d + col])).ok_or(Error::NotAUnit {
                value: self.det() as u64,
                modulus: md.value(),
            })?;
            if pivot != col {
                for c in 0..d {
                    a.swap(pivot * d + c, col * d + c);
                    inv.swap(pivot * d + c, col * d + c);
                }
            }
            let pinv = md.inverse(a[col * d + col])?;
            for c in 0..d {
                a[col * d + c] = md.mul(a[col * d + c], pinv);
                inv[col * d + c] = md.mul(inv[col * d + c], pinv);
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let f = a[r * d + col];
                if f == 0 {
                    continue;
                }
                for c in 0..d {
                    a[r * d + c] = md.sub(a[r * d + c], md.mul(f, a[col * d + c]));
                    inv[r * d + c] = md.sub(inv[r * d + c], md.mul(f, inv[col * d + c]));
                }
            }
        }
        Ok(Matrix { dim: d, modulus: md, entries: inv })
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.dim, self.modulus)
    }

    /// `A J A^T = J` with `J` the standard symplectic form.
    pub fn is_symplectic(&self) -> bool {
        if !self.dim.is_multiple_of(2) {
            return false;
        }
        let j = symplectic_form(self.dim / 2, self.modulus);
        self.mul(&j).mul(&self.transpose()) == j
    }

    /// Image of the column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let d = self.dim;
        (0..d)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..d {
                    acc += self.entries[r * d + c] as u64 * v[c] as u64;
                }
                self.modulus.reduce(acc)
            })
            .collect()
    }
}

pub(crate) fn mul_into(d: usize, md: Modulus, a: &[u32], b: &[u32], out: &mut [u32]) {
    let q = md.value();
    for r in 0..d {
        for c in 0..d {
            let mut acc = 0u64;
            for t in 0..d {
                acc += a[r * d + t] as u64 * b[t * d + c] as u64;
                // keep the accumulator below 2^63 for large moduli
                if acc >= 1 << 62 {
                    acc %= q;
                }
            }
            out[r * d + c] = (acc % q) as u32;
        }
    }
}

fn det_rec(md: Modulus, m: &[u32], d: usize) -> u32 {
    match d {
        0 => 1 % md.value() as u32,
        1 => m[0],
        2 => md.sub(md.mul(m[0], m[3]), md.mul(m[1], m[2])),
        _ => {
            let mut acc = 0u32;
            let mut minor = vec![0u32; (d - 1) * (d - 1)];
            for c0 in 0..d {
                if m[c0] == 0 {
                    continue;
                }
                let mut idx = 0;
                for r in 1..d {
                    for c in 0..d {
                        if c != c0 {
                            minor[idx] = m[r * d + c];
                            idx += 1;
                        }
                    }
                }
                let term = md.mul(m[c0], det_rec(md, &minor, d - 1));
                acc = if c0 % 2 == 0 { md.add(acc, term) } else { md.sub(acc, term) };
            }
            acc
        }
    }
}

/// `I + t E_{ij}`.
pub fn elementary(dim: usize, modulus: Modulus, i: usize, j: usize, t: i64) -> Matrix {
    assert!(i != j && i < dim && j < dim);
    let mut m = Matrix::identity(dim, modulus);
    m.entries[i * dim + j] = modulus.reduce_signed(t);
    m
}

/// The unipotent generator `e_i = I + E_{i,k}` of the abelian subgroup `L`
/// of `SL_k` (last column, row `i`, zero-based).
pub fn sl_root_element(k: usize, modulus: Modulus, i: usize) -> Matrix {
    assert!(i + 1 < k);
    elementary(k, modulus, i, k - 1, 1)
}

/// The normalizing element `alpha(t, a_2, ..., a_{k-1})` of `L` in `SL_k`.
///
/// Its upper-left `(k-1)`-block has first row `(t, a_2, ..., a_{k-1})`,
/// `t^{-1}` in position `(2,2)` and ones further down the diagonal; the last
/// row and column are those of the identity. For `k = 2` the block is
/// `1 x 1` and the element is `diag(t, 1)`, which lies in `GL_2` and still
/// normalizes `L`, acting on it by `e_1 -> e_1^t`.
pub fn sl_alpha(k: usize, modulus: Modulus, t: u32, a: &[u32]) -> Result<Matrix> {
    assert!(k >= 2);
    let mut m = Matrix::identity(k, modulus);
    m.set(0, 0, t);
    if k == 2 {
        modulus.inverse(t)?;
        return Ok(m);
    }
    assert_eq!(a.len(), k - 2, "alpha needs a_2..a_(k-1)");
    let tinv = modulus.inverse(t)?;
    m.set(1, 1, tinv);
    for (idx, &ai) in a.iter().enumerate() {
        m.set(0, idx + 1, ai);
    }
    Ok(m)
}

/// `J = [[0, I_k], [-I_k, 0]]`.
pub fn symplectic_form(k: usize, modulus: Modulus) -> Matrix {
    let d = 2 * k;
    let mut m = Matrix::zero(d, modulus);
    for i in 0..k {
        m.set(i, k + i, 1);
        m.entries[(k + i) * d + i] = modulus.neg(1 % modulus.value() as u32);
    }
    m
}

/// `U_sigma = [[I, sigma], [0, I]]` for a symmetric `k x k` matrix `sigma`.
pub fn sp_unipotent(sigma: &Matrix) -> Matrix {
    let k = sigma.dim();
    assert_eq!(*sigma, sigma.transpose(), "sigma must be symmetric");
    let mut m = Matrix::identity(2 * k, sigma.modulus());
    for r in 0..k {
        for c in 0..k {
            m.set(r, k + c, sigma.get(r, c));
        }
    }
    m
}

/// `D_alpha = diag(alpha, (alpha^{-1})^T)`.
pub fn sp_diagonal(alpha: &Matrix) -> Result<Matrix> {
    let k = alpha.dim();
    let tilde = alpha.inverse()?.transpose();
    let mut m = Matrix::zero(2 * k, alpha.modulus());
    for r in 0..k {
        for c in 0..k {
            m.set(r, c, alpha.get(r, c));
            m.set(k + r, k + c, tilde.get(r, c));
        }
    }
    Ok(m)
}

/// The symmetric matrix with ones at `(i,j)` and `(j,i)`.
pub fn symmetric_unit(k: usize, modulus: Modulus, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zero(k, modulus);
    m.set(i, j, 1);
    m.set(j, i, 1);
    m
}

/// `G_{ij} = U_{E_ij}` with one-based indices as in the literature.
pub fn sp_g(k: usize, modulus: Modulus, i: usize, j: usize) -> Matrix {
    assert!(i >= 1 && j >= 1 && i <= k && j <= k);
    sp_unipotent(&symmetric_unit(k, modulus, i - 1, j - 1))
}

/// The `k x k` matrix `alpha_{t, a_1, ..., a_{k-1}}`: first row
/// `(t, a_1, ..., a_{k-1})`, identity elsewhere.
pub fn sp_alpha(k: usize, modulus: Modulus, t: u32, a: &[u32]) -> Result<Matrix> {
    assert_eq!(a.len(), k - 1);
    modulus.inverse(t)?;
    let mut m = Matrix::identity(k, modulus);
    m.set(0, 0, t);
    for (idx, &ai) in a.iter().enumerate() {
        m.set(0, idx + 1, ai);
    }
    Ok(m)
}
