//! Convolution on a finite group with normalised Haar measure
//! `mu({g}) = 1/|G|`, the convolution operator's singular values, and exact
//! checks of the mixing inequalities that follow from a lower bound `m` on
//! the degrees of non-trivial representations.

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{q, q_int, serialize_approx, serialize_rational, Q};
use crate::exec::Exec;
use crate::groups::{GroupDescriptor, GroupTable};

pub const SVD_LIMIT: usize = 3000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub mean_zero: f64,
    pub norm: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { mean_zero: 1e-12, norm: 1e-9 }
    }
}

/// A complex function on the elements of a group, indexed by ordinal.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    group: GroupDescriptor,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(g: &GroupTable, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != g.order() {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupFunction { group: g.descriptor().clone(), values })
    }

    pub fn from_real(g: &GroupTable, values: &[f64]) -> Result<Self> {
        Self::new(g, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn indicator(g: &GroupTable, set: &[usize]) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); g.order()];
        for &x in set {
            values[x] = Complex64::new(1.0, 0.0);
        }
        GroupFunction { group: g.descriptor().clone(), values }
    }

    pub fn constant(g: &GroupTable, c: Complex64) -> Self {
        GroupFunction { group: g.descriptor().clone(), values: vec![c; g.order()] }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    /// `||f||_2 = ((1/|G|) sum |f(x)|^2)^(1/2)`.
    pub fn norm(&self) -> f64 {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    /// `<f, h> = (1/|G|) sum f(x) conj(h(x))`.
    pub fn inner(&self, other: &GroupFunction) -> Result<Complex64> {
        self.same_group(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum::<Complex64>()
            / self.values.len() as f64)
    }

    pub fn sub(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.same_group(other)?;
        Ok(GroupFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_group(&self, other: &GroupFunction) -> Result<()> {
        if self.group != other.group || self.values.len() != other.values.len() {
            Err(Error::GroupMismatch)
        } else {
            Ok(())
        }
    }

    fn check_on(&self, g: &GroupTable) -> Result<()> {
        if &self.group != g.descriptor() || self.values.len() != g.order() {
            Err(Error::GroupMismatch)
        } else {
            Ok(())
        }
    }
}

/// `(f1 * f2)(x) = (1/|G|) sum_y f1(x y^-1) f2(y)`, by direct summation.
pub fn convolve(g: &GroupTable, f1: &GroupFunction, f2: &GroupFunction) -> Result<GroupFunction> {
    convolve_with(g, f1, f2, Exec::default())
}

pub fn convolve_with(g: &GroupTable, f1: &GroupFunction, f2: &GroupFunction, exec: Exec) -> Result<GroupFunction> {
    f1.check_on(g)?;
    f2.check_on(g)?;
    let n = g.order();
    let inv: Vec<usize> = (0..n).map(|y| g.inv(y)).collect();
    let values = exec.map(n, |x| {
        let mut acc = Complex64::new(0.0, 0.0);
        for y in 0..n {
            let b = f2.values[y];
            if b != Complex64::new(0.0, 0.0) {
                acc += f1.values[g.mul(x, inv[y])] * b;
            }
        }
        acc / n as f64
    });
    Ok(GroupFunction { group: f1.group.clone(), values })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixingCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `||f1 * f2|| <= ||f1|| ||f2|| / sqrt(m)` when `f1` or `f2` has mean zero.
pub fn mixing_check(
    g: &GroupTable,
    f1: &GroupFunction,
    f2: &GroupFunction,
    m: u64,
    tol: Tolerances,
) -> Result<MixingCheck> {
    if f1.mean().norm() > tol.mean_zero && f2.mean().norm() > tol.mean_zero {
        return Err(Error::MeanNotZero);
    }
    if m == 0 {
        return Err(Error::InvalidParameters("m must be positive".into()));
    }
    let lhs = convolve(g, f1, f2)?.norm();
    let rhs = f1.norm() * f2.norm() / (m as f64).sqrt();
    Ok(MixingCheck { lhs, rhs, pass: lhs <= rhs + tol.norm })
}

#[derive(Debug, Clone)]
pub struct OperatorSvd {
    /// Singular values of `f2 -> f1 * f2` on all of `L^2(G)`, descending.
    pub full: Vec<f64>,
    /// Singular values after projecting out the constants, descending.
    pub restricted: Vec<f64>,
    /// Unit-norm mean-zero `f2` attaining the top restricted value.
    pub top_right: Vec<Complex64>,
}

/// Singular values of the convolution operator by `f1`.
///
/// In the orthonormal basis `sqrt|G| delta_y` of `L^2(G, mu)` the operator
/// has matrix `K / |G|` with `K[x][y] = f1(x y^-1)`, so the squared singular
/// values sum to `||f1||^2`.
pub fn convolution_operator_svd(g: &GroupTable, f1: &GroupFunction) -> Result<OperatorSvd> {
    f1.check_on(g)?;
    let n = g.order();
    if n > SVD_LIMIT {
        return Err(Error::TooLarge { what: format!("dense {n}x{n} decomposition"), budget: SVD_LIMIT as u64 });
    }
    let k = DMatrix::from_fn(n, n, |x, y| f1.values[g.mul(x, g.inv(y))] / n as f64);
    let full_svd = k.clone().svd(false, false);
    let mut full: Vec<f64> = full_svd.singular_values.iter().copied().collect();
    full.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let c = Complex64::new(1.0 / n as f64, 0.0);
    let proj = DMatrix::from_fn(n, n, |x, y| if x == y { Complex64::new(1.0, 0.0) - c } else { -c });
    let restricted_svd = (k * proj).svd(false, true);
    let sv = &restricted_svd.singular_values;
    let top = (0..sv.len()).max_by(|&a, &b| sv[a].partial_cmp(&sv[b]).unwrap()).unwrap_or(0);
    let v_t = restricted_svd.v_t.as_ref().expect("requested right singular vectors");
    let scale = (n as f64).sqrt();
    let top_right = (0..n).map(|y| v_t[(top, y)].conj() * scale).collect();
    let mut restricted: Vec<f64> = sv.iter().copied().collect();
    restricted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(OperatorSvd { full, restricted, top_right })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixingDefect {
    pub defect: f64,
    pub bound: f64,
    pub pass: bool,
}

/// `||1_A * 1_B - mu(A) mu(B)|| <= sqrt(mu(A) mu(B) / m)`.
pub fn mixing_defect(g: &GroupTable, a: &[usize], b: &[usize], m: u64, tol: Tolerances) -> Result<MixingDefect> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be positive".into()));
    }
    let n = g.order() as f64;
    let (mu_a, mu_b) = (a.len() as f64 / n, b.len() as f64 / n);
    let conv = convolve(g, &GroupFunction::indicator(g, a), &GroupFunction::indicator(g, b))?;
    let diff = conv.sub(&GroupFunction::constant(g, Complex64::new(mu_a * mu_b, 0.0)))?;
    let defect = diff.norm();
    let bound = (mu_a * mu_b / m as f64).sqrt();
    Ok(MixingDefect { defect, bound, pass: defect <= bound + tol.norm })
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut flag = vec![false; n];
    for &x in set {
        flag[x] = true;
    }
    flag
}

fn density(g: &GroupTable, set: &[usize]) -> Q {
    q(set.len() as i64, g.order() as i64)
}

/// Elements of `A B`, ascending.
pub fn product_set(g: &GroupTable, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut flag = vec![false; g.order()];
    for &x in a {
        for &y in b {
            flag[g.mul(x, y)] = true;
        }
    }
    (0..g.order()).filter(|&z| flag[z]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleDensity {
    /// `#{(a, b, c) in A x B x C : a b = c}`.
    pub count: u64,
    /// `count / |G|^2`.
    #[serde(serialize_with = "serialize_rational")]
    pub measure: Q,
    /// `mu(A) mu(B) mu(C)`.
    #[serde(serialize_with = "serialize_rational")]
    pub product: Q,
}

pub fn triple_density(g: &GroupTable, a: &[usize], b: &[usize], c: &[usize]) -> TripleDensity {
    let in_c = membership(g.order(), c);
    let mut count = 0u64;
    for &x in a {
        for &y in b {
            if in_c[g.mul(x, y)] {
                count += 1;
            }
        }
    }
    let n = g.order() as u64;
    TripleDensity {
        count,
        measure: Q::new(count.into(), (n * n).into()),
        product: density(g, a) * density(g, b) * density(g, c),
    }
}

impl TripleDensity {
    /// When `m mu(A) mu(B) mu(C) >= 1/eta^2`, whether the measure of
    /// solutions is at least `(1 - eta) mu(A) mu(B) mu(C)`; `None` when the
    /// hypothesis fails. Exact.
    pub fn eta_hook(&self, m: u64, eta: &Q) -> Option<bool> {
        let lhs = q_int(m) * &self.product;
        let threshold = Q::from_integer(1.into()) / (eta * eta);
        (lhs >= threshold).then(|| self.measure >= (Q::from_integer(1.into()) - eta) * &self.product)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubeCover {
    #[serde(serialize_with = "serialize_rational")]
    pub density: Q,
    pub covered: bool,
}

/// Checks `A A A = G` by exhaustive product closure, for `mu(A) > m^(-1/3)`.
pub fn cube_cover_check(g: &GroupTable, a: &[usize], m: u64) -> Result<CubeCover> {
    let n = g.order() as u128;
    let size = a.len() as u128;
    if size * size * size * m as u128 <= n * n * n {
        return Err(Error::PreconditionUnmet(format!(
            "density {}/{} is not above {m}^(-1/3)",
            a.len(),
            g.order()
        )));
    }
    let aa = product_set(g, a, a);
    let covered = product_set(g, &aa, a).len() == g.order();
    Ok(CubeCover { density: density(g, a), covered })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductMeasure {
    #[serde(serialize_with = "serialize_rational")]
    pub measure: Q,
    /// `1 - (1 - mu(B)) / (m mu(A) mu(B))`.
    #[serde(serialize_with = "serialize_rational")]
    pub bound: Q,
    pub vacuous: bool,
    pub pass: bool,
}

/// `mu(A B) >= 1 - (1 - mu(B)) / (m mu(A) mu(B))`, compared exactly.
pub fn product_measure_lower(g: &GroupTable, a: &[usize], b: &[usize], m: u64) -> Result<ProductMeasure> {
    if a.is_empty() || b.is_empty() || m == 0 {
        return Err(Error::PreconditionUnmet("A and B must be nonempty and m positive".into()));
    }
    let (mu_a, mu_b) = (density(g, a), density(g, b));
    let one = Q::from_integer(1.into());
    let bound = &one - (&one - &mu_b) / (q_int(m) * &mu_a * &mu_b);
    let measure = density(g, &product_set(g, a, b));
    let vacuous = bound <= Q::from_integer(0.into());
    let pass = measure >= bound;
    Ok(ProductMeasure { measure, bound, vacuous, pass })
}

/// A subset whose density is drawn uniformly from `[lo, hi]`, elements
/// sampled without replacement; sorted. At least one element.
pub fn random_subset<R: Rng>(n: usize, lo: f64, hi: f64, rng: &mut R) -> Vec<usize> {
    let d: f64 = rng.random_range(lo..=hi);
    let size = ((d * n as f64).round() as usize).clamp(1, n);
    let mut set = sample(rng, n, size).into_vec();
    set.sort_unstable();
    set
}

/// Entries uniform in the unit square; optionally shifted to mean zero.
pub fn random_function<R: Rng>(n: usize, mean_zero: bool, rng: &mut R) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    if mean_zero {
        let mean = v.iter().sum::<Complex64>() / n as f64;
        for x in v.iter_mut() {
            *x -= mean;
        }
    }
    v
}

/// Aggregate of a randomized verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub test: String,
    pub trials: u64,
    pub failures: u64,
    /// Smallest `bound / observed` ratio; at least 1 when nothing failed.
    #[serde(serialize_with = "serialize_approx")]
    pub worst_ratio: f64,
    pub seed: u64,
    /// Trials where the checked statement had no content.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vacuous: Option<u64>,
}

fn ratio(bound: f64, observed: f64) -> f64 {
    if observed <= 0.0 {
        f64::INFINITY
    } else {
        bound / observed
    }
}

fn report(test: &str, seed: u64, outcomes: &[(bool, f64)], vacuous: Option<u64>) -> SuiteReport {
    SuiteReport {
        test: test.to_string(),
        trials: outcomes.len() as u64,
        failures: outcomes.iter().filter(|o| !o.0).count() as u64,
        worst_ratio: outcomes.iter().map(|o| o.1).fold(f64::INFINITY, f64::min),
        seed,
        vacuous,
    }
}

/// Random pairs with `f1` mean zero (and `f2` mean zero on odd trials).
pub fn mixing_suite(g: &GroupTable, m: u64, trials: usize, seed: u64, exec: Exec, tol: Tolerances) -> Result<SuiteReport> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..trials)
        .map(|t| (random_function(n, true, &mut rng), random_function(n, t % 2 == 1, &mut rng)))
        .collect();
    let outcomes = exec.map(trials, |t| -> Result<(bool, f64)> {
        let f1 = GroupFunction::new(g, inputs[t].0.clone())?;
        let f2 = GroupFunction::new(g, inputs[t].1.clone())?;
        let c = mixing_check(g, &f1, &f2, m, tol)?;
        Ok((c.pass, ratio(c.rhs, c.lhs)))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(report("mixing", seed, &outcomes, None))
}

/// Random set pairs `(A, B)`: `1_A * 1_B` is within `sqrt(mu(A)mu(B)/m)` of
/// its mean.
pub fn set_mixing_suite(g: &GroupTable, m: u64, trials: usize, seed: u64, exec: Exec, tol: Tolerances) -> Result<SuiteReport> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<(Vec<usize>, Vec<usize>)> = (0..trials)
        .map(|_| (random_subset(n, 0.0, 1.0, &mut rng), random_subset(n, 0.0, 1.0, &mut rng)))
        .collect();
    let outcomes = exec.map(trials, |t| -> Result<(bool, f64)> {
        let d = mixing_defect(g, &inputs[t].0, &inputs[t].1, m, tol)?;
        Ok((d.pass, ratio(d.bound, d.defect)))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(report("set-mixing", seed, &outcomes, None))
}

/// Random `f1`: the top singular value on mean-zero functions is at most
/// `||f1|| / sqrt(m)`, the squared singular values of the full operator sum
/// to `||f1||^2`, and the top right singular vector attains `sigma_1`.
pub fn svd_suite(g: &GroupTable, m: u64, trials: usize, seed: u64, exec: Exec, tol: Tolerances) -> Result<SuiteReport> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<Vec<Complex64>> = (0..trials).map(|_| random_function(n, false, &mut rng)).collect();
    let outcomes = exec.map(trials, |t| -> Result<(bool, f64)> {
        let f1 = GroupFunction::new(g, inputs[t].clone())?;
        let svd = convolution_operator_svd(g, &f1)?;
        let norm = f1.norm();
        let hs: f64 = svd.full.iter().map(|s| s * s).sum();
        let sigma1 = svd.restricted.first().copied().unwrap_or(0.0);
        let bound = norm / (m as f64).sqrt();
        let f2 = GroupFunction::new(g, svd.top_right.clone())?;
        let attained = convolve(g, &f1, &f2)?.norm();
        let ok = (hs - norm * norm).abs() <= tol.norm
            && sigma1 <= bound + tol.norm
            && (attained - sigma1).abs() <= tol.norm.max(1e-9 * sigma1);
        Ok((ok, ratio(bound, sigma1)))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(report("operator-svd", seed, &outcomes, None))
}

/// Random `A` with `mu(A) > m^(-1/3)` cover `G` in three steps.
pub fn cube_cover_suite(g: &GroupTable, m: u64, trials: usize, seed: u64, exec: Exec) -> Result<SuiteReport> {
    let n = g.order();
    // smallest size with size^3 m > n^3
    let min_size = (1..=n)
        .find(|&s| (s as u128).pow(3) * m as u128 > (n as u128).pow(3))
        .ok_or_else(|| Error::PreconditionUnmet("no admissible density".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<Vec<usize>> = (0..trials)
        .map(|_| {
            let size = rng.random_range(min_size..=n);
            let mut set = sample(&mut rng, n, size).into_vec();
            set.sort_unstable();
            set
        })
        .collect();
    let outcomes = exec.map(trials, |t| -> Result<(bool, f64)> {
        let c = cube_cover_check(g, &inputs[t], m)?;
        Ok((c.covered, if c.covered { 1.0 } else { 0.0 }))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(report("cube-cover", seed, &outcomes, None))
}

/// Random dense triples `(A, B, C)`; for each `eta` whose hypothesis holds,
/// the solution measure is at least `(1 - eta) mu(A)mu(B)mu(C)`. Trials
/// where no hypothesis holds are counted as vacuous.
pub fn triple_suite(g: &GroupTable, m: u64, trials: usize, seed: u64, etas: &[Q], exec: Exec) -> Result<SuiteReport> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<[Vec<usize>; 3]> = (0..trials)
        .map(|_| {
            [
                random_subset(n, 0.5, 1.0, &mut rng),
                random_subset(n, 0.5, 1.0, &mut rng),
                random_subset(n, 0.5, 1.0, &mut rng),
            ]
        })
        .collect();
    let results = exec.map(trials, |t| {
        let [a, b, c] = &inputs[t];
        let td = triple_density(g, a, b, c);
        let mut ok = true;
        let mut worst = f64::INFINITY;
        let mut triggered = false;
        for eta in etas {
            if let Some(pass) = td.eta_hook(m, eta) {
                triggered = true;
                ok &= pass;
                let need = (Q::from_integer(1.into()) - eta) * &td.product;
                let r = crate::exact::to_f64(&td.measure) / crate::exact::to_f64(&need);
                worst = worst.min(r);
            }
        }
        (ok, worst, triggered)
    });
    let vacuous = results.iter().filter(|r| !r.2).count() as u64;
    let outcomes: Vec<(bool, f64)> = results.iter().map(|r| (r.0, r.1)).collect();
    Ok(report("triple-density", seed, &outcomes, Some(vacuous)))
}

/// Random pairs: `mu(AB) >= 1 - (1 - mu(B)) / (m mu(A) mu(B))`.
pub fn product_measure_suite(g: &GroupTable, m: u64, trials: usize, seed: u64, exec: Exec) -> Result<SuiteReport> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<(Vec<usize>, Vec<usize>)> = (0..trials)
        .map(|_| (random_subset(n, 0.0, 1.0, &mut rng), random_subset(n, 0.0, 1.0, &mut rng)))
        .collect();
    let results = exec.map(trials, |t| product_measure_lower(g, &inputs[t].0, &inputs[t].1, m));
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let vacuous = results.iter().filter(|r| r.vacuous).count() as u64;
    let outcomes: Vec<(bool, f64)> = results
        .iter()
        .map(|r| {
            let ratio = if r.vacuous {
                f64::INFINITY
            } else {
                crate::exact::to_f64(&r.measure) / crate::exact::to_f64(&r.bound)
            };
            (r.pass, ratio)
        })
        .collect();
    Ok(report("product-measure", seed, &outcomes, Some(vacuous)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::*;

    const B: u64 = DEFAULT_ELEMENT_BUDGET;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn convolution_basics() {
        let z3 = build_abelian(&[3], B).unwrap();
        let zero = z3.identity();
        let one = (0..3).find(|&x| z3.element(x) == [1]).unwrap();
        let c = convolve(&z3, &GroupFunction::indicator(&z3, &[zero]), &GroupFunction::indicator(&z3, &[one])).unwrap();
        for x in 0..3 {
            let expect = if x == one { 1.0 / 3.0 } else { 0.0 };
            assert!(close(c.values()[x], Complex64::new(expect, 0.0)));
        }

        let g = build_sl(2, 3, 1, B).unwrap();
        let all: Vec<usize> = (0..24).collect();
        let set = vec![1, 5, 7, 20];
        let c = convolve(&g, &GroupFunction::indicator(&g, &all), &GroupFunction::indicator(&g, &set)).unwrap();
        assert!(c.values().iter().all(|&z| close(z, Complex64::new(4.0 / 24.0, 0.0))));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = GroupFunction::new(&g, random_function(24, true, &mut rng)).unwrap();
        let k = convolve(&g, &f, &GroupFunction::constant(&g, Complex64::new(2.0, 1.0))).unwrap();
        assert!(k.norm() < 1e-12);
    }

    #[test]
    fn group_mismatch() {
        let a = build_abelian(&[3], B).unwrap();
        let b = build_abelian(&[2], B).unwrap();
        let fa = GroupFunction::constant(&a, Complex64::new(1.0, 0.0));
        let fb = GroupFunction::constant(&b, Complex64::new(1.0, 0.0));
        assert_eq!(convolve(&a, &fa, &fb), Err(Error::GroupMismatch));
    }

    #[test]
    fn associativity() {
        let g = build_sym(4, B).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let f: Vec<GroupFunction> = (0..3)
                .map(|_| GroupFunction::new(&g, random_function(24, false, &mut rng)).unwrap())
                .collect();
            let left = convolve(&g, &convolve(&g, &f[0], &f[1]).unwrap(), &f[2]).unwrap();
            let right = convolve(&g, &f[0], &convolve(&g, &f[1], &f[2]).unwrap()).unwrap();
            assert!(left.sub(&right).unwrap().norm() < 1e-9);
        }
    }

    #[test]
    fn mixing_check_cases() {
        let g = build_abelian(&[6], B).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f1 = GroupFunction::new(&g, random_function(6, true, &mut rng)).unwrap();
        let c = GroupFunction::constant(&g, Complex64::new(3.0, 0.0));
        let r = mixing_check(&g, &f1, &c, 1, Tolerances::default()).unwrap();
        assert!(r.lhs < 1e-12 && r.pass);
        let f2 = GroupFunction::new(&g, random_function(6, false, &mut rng)).unwrap();
        assert!(mixing_check(&g, &f1, &f2, 1, Tolerances::default()).unwrap().pass);
        assert_eq!(mixing_check(&g, &c, &c, 1, Tolerances::default()), Err(Error::MeanNotZero));
    }

    #[test]
    fn svd_identities() {
        let g = build_sl(2, 3, 1, B).unwrap();
        let zero = GroupFunction::constant(&g, Complex64::new(0.0, 0.0));
        assert!(convolution_operator_svd(&g, &zero).unwrap().full.iter().all(|&s| s < 1e-12));
        let ones = GroupFunction::constant(&g, Complex64::new(1.0, 0.0));
        let s = convolution_operator_svd(&g, &ones).unwrap();
        assert!(s.restricted[0] < 1e-12);
        assert!((s.full[0] - 1.0).abs() < 1e-12);

        let set = vec![0, 3, 4, 9, 10, 17, 22];
        let f = GroupFunction::indicator(&g, &set);
        let s = convolution_operator_svd(&g, &f).unwrap();
        let hs: f64 = s.full.iter().map(|x| x * x).sum();
        assert!((hs - 7.0 / 24.0).abs() < 1e-9);
    }

    #[test]
    fn set_level_checks() {
        let g = build_sl(2, 3, 1, B).unwrap();
        let all: Vec<usize> = (0..24).collect();
        let d = mixing_defect(&g, &all, &[2, 3], 1, Tolerances::default()).unwrap();
        assert!(d.defect < 1e-12 && d.pass);
        let d = mixing_defect(&g, &[], &[2, 3], 1, Tolerances::default()).unwrap();
        assert!(d.defect < 1e-12);

        let t = triple_density(&g, &all, &all, &all);
        assert_eq!((t.count, t.measure.clone()), (576, q(1, 1)));
        let e = [g.identity()];
        let t = triple_density(&g, &e, &e, &e);
        assert_eq!((t.count, t.measure), (1, q(1, 576)));

        assert!(cube_cover_check(&g, &all, 2).unwrap().covered);
        let mut most = all.clone();
        most.retain(|&x| x != 5 && x != g.identity());
        most.push(g.identity());
        most.sort();
        assert!(cube_cover_check(&g, &most, 2).unwrap().covered);
        assert!(matches!(cube_cover_check(&g, &[0, 1], 2), Err(Error::PreconditionUnmet(_))));

        let p = product_measure_lower(&g, &all, &all, 1).unwrap();
        assert_eq!((p.measure.clone(), p.bound.clone(), p.pass), (q(1, 1), q(1, 1), true));
        let p = product_measure_lower(&g, &[1], &[2], 1).unwrap();
        assert!(p.vacuous && p.pass);
    }

    #[test]
    fn inner_product_matches_triple_count() {
        let g = build_sl(2, 3, 1, B).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let sets: Vec<Vec<usize>> = (0..3).map(|_| random_subset(24, 0.1, 0.9, &mut rng)).collect();
            let t = triple_density(&g, &sets[0], &sets[1], &sets[2]);
            let conv = convolve(&g, &GroupFunction::indicator(&g, &sets[0]), &GroupFunction::indicator(&g, &sets[1])).unwrap();
            let ip = conv.inner(&GroupFunction::indicator(&g, &sets[2])).unwrap();
            assert!((ip.re - crate::exact::to_f64(&t.measure)).abs() < 1e-10);
        }
    }

    #[test]
    fn suites_are_reproducible() {
        let g = build_sl(2, 3, 1, B).unwrap();
        let a = mixing_suite(&g, 1, 20, 42, Exec::Sequential, Tolerances::default()).unwrap();
        let b = mixing_suite(&g, 1, 20, 42, Exec::default(), Tolerances::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.failures, 0);
        assert!(a.worst_ratio >= 1.0);
    }
}
