use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exact;
use crate::subset::Subset;

use super::lattice::mobius_from;
use super::{Base, RankTable};

/// `Σ c_i t^{log_b m_i}` with integer `c_i` and positive rational `m_i`.
#[derive(Clone, Debug)]
pub struct LogPolynomial {
    base: Base,
    terms: Vec<(BigInt, BigRational)>,
}

impl PartialEq for LogPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.terms == other.terms
    }
}

impl LogPolynomial {
    /// Merges equal `m`, drops zero coefficients, sorts by decreasing `m`.
    pub fn from_terms(base: Base, terms: impl IntoIterator<Item = (BigInt, BigRational)>) -> LogPolynomial {
        let mut v: Vec<(BigInt, BigRational)> = terms.into_iter().collect();
        v.sort_by(|a, b| b.1.cmp(&a.1));
        let mut merged: Vec<(BigInt, BigRational)> = Vec::with_capacity(v.len());
        for (c, m) in v {
            match merged.last_mut() {
                Some((c0, m0)) if *m0 == m => *c0 += c,
                _ => merged.push((c, m)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        LogPolynomial { base, terms: merged }
    }

    pub fn zero(base: Base) -> LogPolynomial {
        LogPolynomial { base, terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn terms(&self) -> &[(BigInt, BigRational)] {
        &self.terms
    }

    /// Exact value at `t = b^k`: `Σ c m^k`.
    pub fn eval_at_power(&self, k: i64) -> BigRational {
        self.terms.iter().map(|(c, m)| exact::pow(m, k) * BigRational::from_integer(c.clone())).sum()
    }

    /// Floating value at `t > 0`.
    pub fn eval_f64(&self, t: f64) -> f64 {
        let lb = self.base.ln();
        self.terms
            .iter()
            .map(|(c, m)| exact::to_f64(&BigRational::from_integer(c.clone())) * (t.ln() * exact::ln(m) / lb).exp())
            .sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(c, m)| json!([exact::int_json(c), exact::int_json(m.numer()), exact::int_json(m.denom())]))
                .collect(),
        )
    }

    fn exponent_string(&self, m: &BigRational) -> String {
        let b = self.base.value();
        if m.is_one() {
            return "0".into();
        }
        if let Some(k) = exact::exact_log(m, &b, 64) {
            return k.to_string();
        }
        format!("log_{} {}", self.base, exact::fmt(m))
    }
}

impl fmt::Display for LogPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let e = self.exponent_string(m);
            let mono = match e.as_str() {
                "0" => String::new(),
                "1" => "t".into(),
                _ if e.starts_with("log") => format!("t^{{{e}}}"),
                _ => format!("t^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

/// `χ_P(t) = Σ_S (-1)^{|S|} t^{r(E) - r(S)}`, the zero function when P has a loop.
pub fn char_poly(p: &RankTable) -> LogPolynomial {
    if !p.loops().is_empty() {
        return LogPolynomial::zero(p.base().clone());
    }
    let ce = p.card(p.ground());
    let terms = Subset::all(p.n()).map(|s| {
        let c = if s.len() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        (c, ce / p.card(s))
    });
    LogPolynomial::from_terms(p.base().clone(), terms)
}

/// The same polynomial as a sum over flats weighted by `μ(∅, F)`.
pub fn char_poly_mobius(p: &RankTable) -> LogPolynomial {
    if !p.loops().is_empty() {
        return LogPolynomial::zero(p.base().clone());
    }
    let ce = p.card(p.ground());
    let terms = mobius_from(p, Subset::EMPTY).into_iter().map(|(f, mu)| (BigInt::from(mu), ce / p.card(f)));
    LogPolynomial::from_terms(p.base().clone(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::polymatroid::{a_dual, rank_table, AlphaVector};

    #[test]
    fn hs3_polynomials() {
        let p = rank_table(&fixtures::h_s3(), Base::GroupOrder(6)).unwrap();
        let chi = char_poly(&p);
        assert_eq!(chi.to_string(), "t - t^{log_6 3}");
        assert_eq!(chi, char_poly_mobius(&p));
        assert_eq!(chi.eval_at_power(1), exact::int(3));
        assert_eq!(chi.eval_at_power(2), exact::int(27));
        assert_eq!(chi.eval_at_power(0), exact::int(0));
        let d = a_dual(&p, &AlphaVector::uniform(2, 6)).unwrap();
        let chid = char_poly(&d);
        assert_eq!(chid.to_string(), "t - t^{log_6 3}");
        assert_eq!(chid, char_poly_mobius(&d));
        assert_eq!(chid.to_json(), serde_json::json!([[1, 6, 1], [-1, 3, 1]]));
        assert!((chi.eval_f64(36.0) - 27.0).abs() < 1e-9);
    }

    #[test]
    fn loops_give_zero() {
        let g = crate::groups::GroupProduct::power(crate::groups::FiniteGroup::cyclic(2).unwrap(), 2).unwrap();
        let h = crate::groups::subgroup_closure(&g, &[vec![1, 0]]).unwrap();
        let p = rank_table(&h, Base::GroupOrder(2)).unwrap();
        assert!(char_poly(&p).is_zero());
        assert!(char_poly_mobius(&p).is_zero());
    }
}
