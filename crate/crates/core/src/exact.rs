//! Small helpers around exact integers and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn big(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `x^k` for any integer `k`; `x` must be nonzero when `k < 0`.
pub fn pow(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), k.unsigned_abs() as usize)
    }
}

/// Natural log of a positive integer of any size.
pub fn ln_int(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 900;
    let top: BigInt = v >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln(v: &BigRational) -> f64 {
    ln_int(v.numer()) - ln_int(v.denom())
}

pub fn to_f64(v: &BigRational) -> f64 {
    match v.to_f64() {
        Some(x) if x.is_finite() && x != 0.0 => x,
        _ if v.is_zero() => 0.0,
        _ => {
            let s = if v.is_negative() { -1.0 } else { 1.0 };
            s * ln(&v.abs()).exp()
        }
    }
}

/// `"p"` or `"p/q"`.
pub fn fmt(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn parse(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p.trim().parse().ok()?, q))
            }
        }
        None => Some(big(s.parse::<BigInt>().ok()?)),
    }
}

/// Integer `k` in `0..=max` with `base^k == v`, if any.
pub fn exact_log(v: &BigRational, base: &BigRational, max: usize) -> Option<usize> {
    if base.is_one() {
        return v.is_one().then_some(0);
    }
    let mut p = BigRational::one();
    for k in 0..=max {
        if &p == v {
            return Some(k);
        }
        p *= base;
    }
    None
}

/// JSON number when it fits in an `i64`, otherwise a decimal string.
pub fn int_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from(v.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_and_logs() {
        assert_eq!(pow(&int(6), -2), BigRational::new(1.into(), 36.into()));
        assert_eq!(exact_log(&int(36), &int(6), 4), Some(2));
        assert_eq!(exact_log(&int(2), &int(6), 4), None);
        let huge = num_traits::pow(BigInt::from(7), 2000);
        assert!((ln_int(&huge) - 2000.0 * 7f64.ln()).abs() < 1e-6);
        assert_eq!(parse("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(fmt(&parse("-4").unwrap()), "-4");
    }
}
