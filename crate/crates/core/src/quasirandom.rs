//! Closed-form lower bounds on representation degrees and closed-form
//! product-free measures, with exact comparison against computed values.

use num::{BigInt, Integer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    pow_u, q, q_big, q_int, serialize_approx, serialize_rational, to_f64, Q,
};
use crate::modring::{is_prime, lcm};

/// The linear families covered by the degree bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinearFamily {
    Sl2,
    Slk,
    Sp2k,
}

impl LinearFamily {
    /// Picks the row for `SL_k` (`k = 2` has its own formula) or `Sp_2k`.
    pub fn for_group(symplectic: bool, k: usize) -> Self {
        match (symplectic, k) {
            (true, _) => LinearFamily::Sp2k,
            (false, 2) => LinearFamily::Sl2,
            (false, _) => LinearFamily::Slk,
        }
    }

    fn check_k(self, k: usize) -> Result<()> {
        let ok = match self {
            LinearFamily::Sl2 => k == 2,
            LinearFamily::Slk => k >= 3,
            LinearFamily::Sp2k => k >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("k = {k} does not fit {self:?}")))
        }
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    Ok(())
}

/// `h(G, p)`: lower bound for the minimal degree of a non-trivial
/// representation of `G(Z_p)` not factoring through smaller congruence
/// quotients; `(p-1)/2`, `p^(k-1) - p^(k-2)`, `(p-1) p^(k-1) / 2`.
pub fn h_bound(family: LinearFamily, k: usize, p: u64) -> Result<Q> {
    check_odd_prime(p)?;
    family.check_k(k)?;
    let k = k as u32;
    Ok(match family {
        LinearFamily::Sl2 => q((p - 1) as i64, 2),
        LinearFamily::Slk => q_big(pow_u(p, k - 1) - pow_u(p, k - 2), 1.into()),
        LinearFamily::Sp2k => q_big(BigInt::from(p - 1) * pow_u(p, k - 1), 2.into()),
    })
}

/// `h_f(G, p, n)`: lower bound for the degree of a faithful representation
/// of `G(Z/p^n)`.
pub fn hf_bound(family: LinearFamily, k: usize, p: u64, n: u32) -> Result<Q> {
    check_odd_prime(p)?;
    family.check_k(k)?;
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let k = k as u32;
    let base = pow_u(p, n) - pow_u(p, n - 1);
    Ok(match family {
        LinearFamily::Sl2 => q_big(base, 2.into()),
        LinearFamily::Slk => q_big(base * pow_u(p, (k - 2) * n), 1.into()),
        LinearFamily::Sp2k => q_big(base * pow_u(p, (k - 1) * n), 2.into()),
    })
}

/// `p^(n-2) (p^2 - 1) / 2`, the Clifford-theory lower bound for faithful
/// representations of `SL_2(Z/p^n)`, `n >= 2`.
pub fn bgc_bound(p: u64, n: u32) -> Result<Q> {
    check_odd_prime(p)?;
    if n < 2 {
        return Err(Error::UnsupportedParameters("the bound needs n >= 2".into()));
    }
    Ok(q_big(pow_u(p, n - 2) * BigInt::from(p * p - 1), 2.into()))
}

/// Lower and upper bounds on a product-free measure. The upper bound is
/// irrational (a cube root), kept as a float and a symbolic form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PfBounds {
    #[serde(serialize_with = "serialize_rational")]
    pub lower: Q,
    #[serde(serialize_with = "serialize_approx")]
    pub upper: f64,
    /// The upper bound as `x^(-1/3)` with `x` exact.
    #[serde(serialize_with = "serialize_rational")]
    pub upper_base: Q,
    /// `min(upper, 1/2)`: every product-free measure is at most `1/2`.
    #[serde(serialize_with = "serialize_approx")]
    pub effective_upper: f64,
}

impl PfBounds {
    fn new(lower: Q, upper_base: Q) -> Self {
        let upper = to_f64(&upper_base).powf(-1.0 / 3.0);
        PfBounds { lower, upper, upper_base, effective_upper: upper.min(0.5) }
    }
}

/// Product-free measure bounds for `SL_2(Z_p)`, `SL_k(Z_p)` (`k >= 3`) and
/// `Sp_2k(Z_p)` (`k >= 2`).
pub fn pf_bounds_profinite(family: LinearFamily, k: usize, p: u64) -> Result<PfBounds> {
    let range_err = || Error::OutOfTheoremRange(format!("{family:?} with k = {k}, p = {p}"));
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(range_err());
    }
    let kk = k as u32;
    Ok(match family {
        LinearFamily::Sl2 if k == 2 => PfBounds::new(q(1, (p + 1) as i64), q((p - 1) as i64, 2)),
        LinearFamily::Slk if k >= 3 => PfBounds::new(
            q_big(BigInt::from(p - 1), pow_u(p, kk) - 1),
            q_big(pow_u(p, kk) - pow_u(p, kk - 1), 1.into()),
        ),
        LinearFamily::Sp2k if k >= 2 => PfBounds::new(
            q_big(BigInt::from(p - 1), pow_u(p, 2 * kk) - 1),
            q_big(BigInt::from(p - 1) * pow_u(p, kk - 1), 2.into()),
        ),
        _ => return Err(range_err()),
    })
}

/// Product-free measure bounds for the automorphism group of the rooted
/// `k`-regular tree, `k >= 6`: `(1/(k+1), (k-1)^(-1/3))`.
pub fn pf_bounds_tree(k: usize) -> Result<PfBounds> {
    if k < 6 {
        return Err(Error::OutOfTheoremRange(format!("tree bound needs k >= 6, got {k}")));
    }
    Ok(PfBounds::new(q(1, k as i64 + 1), q_int(k as u64 - 1)))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest product-free density of a finite abelian group with the given
/// invariant factors (any factorization presenting the group works).
///
/// * some prime `p = 2 (mod 3)` divides `|G|`: `1/3 + 1/(3p)`, `p` smallest;
/// * otherwise `3 | |G|`: `1/3`;
/// * otherwise `1/3 - 1/(3m)` with `m` the exponent of `G`.
pub fn green_ruzsa_pf(factors: &[u64]) -> Result<Q> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(Error::InvalidParameters("need a nonempty list of positive factors".into()));
    }
    let mut primes: Vec<u64> = factors.iter().flat_map(|&f| prime_divisors(f)).collect();
    primes.sort_unstable();
    primes.dedup();
    if let Some(&p) = primes.iter().find(|&&p| p % 3 == 2) {
        return Ok(q(1, 3) + q(1, 3 * p as i64));
    }
    if primes.contains(&3) {
        return Ok(q(1, 3));
    }
    let m = factors.iter().fold(1, |acc, &f| lcm(acc, f));
    Ok(q(1, 3) - q(1, 3 * m as i64))
}

/// Product-free measure of the `p`-adic integers.
pub fn pf_padic(p: u64) -> Result<Q> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    Ok(if p % 3 == 2 { q(1, 3) + q(1, 3 * p as i64) } else { q(1, 3) })
}

/// Product-free measure of the additive group of `F_p[[t]]`.
pub fn pf_power_series(p: u64) -> Result<Q> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    Ok(match p % 3 {
        2 => q(1, 3) + q(1, 3 * p as i64),
        0 => q(1, 3),
        _ => q(1, 3) - q(1, 3 * p as i64),
    })
}

/// Product-free measure of a torus `T^k`, the same for every `k >= 1`.
pub fn pf_torus() -> Q {
    q(1, 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "=")]
    Equal,
}

impl Relation {
    pub fn holds(self, computed: &Q, formula: &Q) -> bool {
        match self {
            Relation::AtLeast => computed >= formula,
            Relation::AtMost => computed <= formula,
            Relation::Equal => computed == formula,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Equal => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub quantity: String,
    #[serde(serialize_with = "serialize_rational")]
    pub computed: Q,
    #[serde(serialize_with = "serialize_rational")]
    pub formula: Q,
    pub relation: Relation,
    pub pass: bool,
    pub refs: Vec<String>,
}

/// Compares exactly: `pass` is `computed relation formula`.
pub fn verify_bound(quantity: &str, computed: Q, formula: Q, relation: Relation, refs: &[&str]) -> BoundReport {
    let pass = relation.holds(&computed, &formula);
    BoundReport {
        quantity: quantity.to_string(),
        computed,
        formula,
        relation,
        pass,
        refs: refs.iter().map(|s| s.to_string()).collect(),
    }
}

/// Integer ceiling of a non-negative rational.
pub fn ceil(x: &Q) -> BigInt {
    x.numer().div_ceil(x.denom())
}
