//! Exact rationals and the JSON forms used for numbers in reports.
//!
//! Rationals serialize as `{"num": "...", "den": "..."}` with decimal
//! strings; irrational quantities as `{"approx": "..."}` carrying twelve
//! significant digits.

use num::{BigInt, BigRational, ToPrimitive};
use serde::{Serialize, Serializer};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_int(n: u64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_big(num: BigInt, den: BigInt) -> Q {
    BigRational::new(num, den)
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn pow_u(base: u64, exp: u32) -> BigInt {
    num::pow(BigInt::from(base), exp as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Q> for RationalJson {
    fn from(x: &Q) -> Self {
        RationalJson { num: x.numer().to_string(), den: x.denom().to_string() }
    }
}

pub fn serialize_rational<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    RationalJson::from(x).serialize(s)
}

pub fn serialize_opt_rational<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    x.as_ref().map(RationalJson::from).serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxJson {
    pub approx: String,
}

pub fn approx(x: f64) -> ApproxJson {
    ApproxJson { approx: sig12(x) }
}

pub fn serialize_approx<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    approx(*x).serialize(s)
}

/// Decimal rendering with twelve significant digits, trailing zeros kept
/// so that the width is stable.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000000000".to_string();
    }
    // the scientific form rounds first, so the exponent already accounts
    // for a carry into a new leading digit
    let sci = format!("{:.11e}", x);
    let exp: i32 = sci.split('e').nth(1).and_then(|e| e.parse().ok()).unwrap_or(0);
    format!("{:.*}", (11 - exp).max(0) as usize, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(3f64.powf(-1.0 / 3.0)), "0.693361274351");
        assert_eq!(sig12(5f64.powf(-1.0 / 3.0)), "0.584803547643");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(123.456), "123.456000000");
        assert_eq!(sig12(-0.5), "-0.500000000000");
        assert_eq!(sig12(9.9999999999999), "10.0000000000");
    }

    #[test]
    fn rational_json() {
        let x = q(6, -4);
        assert_eq!(
            serde_json::to_value(RationalJson::from(&x)).unwrap(),
            serde_json::json!({"num": "-3", "den": "2"})
        );
    }
}
