//! Residue rings `Z/p^n`.
//!
//! Values are kept canonical in `[0, p^n)` and moduli are capped at `2^31`
//! so that every product fits in a `u64` before reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_MODULUS: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The modulus `p^n` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    p: u32,
    n: u32,
    q: u32,
}

impl Modulus {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("exponent n must be positive".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        let mut q: u64 = 1;
        for _ in 0..n {
            q = q.saturating_mul(p);
            if q > MAX_MODULUS {
                return Err(Error::TooLarge {
                    what: format!("modulus {p}^{n}"),
                    budget: MAX_MODULUS,
                });
            }
        }
        Ok(Modulus { p: p as u32, n, q: q as u32 })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self) -> u64 {
        self.q as u64
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u32 {
        (x % self.q as u64) as u32
    }

    /// Reduces a signed integer into `[0, q)`.
    #[inline]
    pub fn reduce_signed(&self, x: i64) -> u32 {
        x.rem_euclid(self.q as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.q as u64 {
            (s - self.q as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.q as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: u32) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn inverse(&self, a: u32) -> Result<u32> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit { value: a as u64, modulus: self.q as u64 });
        }
        inverse_mod(a as u64, self.q as u64)
            .map(|x| x as u32)
            .ok_or(Error::NotAUnit { value: a as u64, modulus: self.q as u64 })
    }

    pub fn residue(&self, value: u64) -> Residue {
        Residue { value: self.reduce(value), modulus: *self }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.n)
        }
    }
}

/// An element of `Z/p^n` in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: u64, modulus: Modulus) -> Self {
        modulus.residue(value)
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_unit(&self) -> bool {
        self.modulus.is_unit(self.value)
    }

    pub fn pow(&self, e: u64) -> Residue {
        Residue { value: self.modulus.pow(self.value, e), modulus: self.modulus }
    }

    fn same(&self, other: &Residue) {
        assert_eq!(self.modulus, other.modulus, "residues over different moduli");
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.same(&rhs);
        Residue { value: self.modulus.add(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.same(&rhs);
        Residue { value: self.modulus.sub(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.same(&rhs);
        Residue { value: self.modulus.mul(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue { value: self.modulus.neg(self.value), modulus: self.modulus }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus.value())
    }
}

pub fn unit_inverse(a: Residue) -> Result<Residue> {
    let inv = a.modulus.inverse(a.value)?;
    Ok(Residue { value: inv, modulus: a.modulus })
}

/// Number of units of `Z/p^n` and number of those units that are squares.
///
/// Enumerates the ring when `p^n <= 10^4` and uses the closed forms
/// `phi(p^n)` and `phi(p^n)/2` otherwise.
pub fn units_and_squares(p: u64, n: u32) -> Result<(u64, u64)> {
    if p == 2 {
        return Err(Error::UnsupportedModulus {
            p,
            n,
            reason: "the square-unit count is only phi/2 for odd p",
        });
    }
    let m = Modulus::new(p, n)?;
    let q = m.value();
    if q <= 10_000 {
        let mut squares = vec![false; q as usize];
        let mut units = 0;
        for a in 0..q as u32 {
            if m.is_unit(a) {
                units += 1;
                squares[m.mul(a, a) as usize] = true;
            }
        }
        let sq = squares.iter().filter(|&&b| b).count() as u64;
        Ok((units, sq))
    } else {
        let phi = q - q / p;
        Ok((phi, phi / 2))
    }
}
