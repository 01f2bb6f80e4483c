use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::exact;
use crate::subset::Subset;

use super::{Base, RankTable};

/// `Σ c (u-1)^{log_b m1} (v-1)^{log_b m2}`, stored as `(c, m1, m2)`.
#[derive(Clone, Debug)]
pub struct TuttePoly {
    base: Base,
    terms: Vec<(BigInt, BigRational, BigRational)>,
}

impl PartialEq for TuttePoly {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.terms == other.terms
    }
}

/// `T_P = Σ_S (u-1)^{r(E)-r(S)} (v-1)^{|S|-r(S)}`.
pub fn tutte(p: &RankTable) -> TuttePoly {
    let b = p.base().value();
    let ce = p.card(p.ground());
    let mut acc: BTreeMap<(BigRational, BigRational), BigInt> = BTreeMap::new();
    for s in Subset::all(p.n()) {
        let cs = p.card(s);
        let m1 = ce / cs;
        let m2 = exact::pow(&b, s.len() as i64) / cs;
        *acc.entry((m1, m2)).or_insert_with(BigInt::zero) += 1;
    }
    let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((m1, m2), c)| (c, m1, m2)).collect();
    terms.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| b.2.cmp(&a.2)));
    TuttePoly { base: p.base().clone(), terms }
}

impl TuttePoly {
    pub fn terms(&self) -> &[(BigInt, BigRational, BigRational)] {
        &self.terms
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    /// Exact value at `u - 1 = b^α`, `v - 1 = b^β`.
    pub fn eval_exact(&self, alpha: i64, beta: i64) -> BigRational {
        self.terms
            .iter()
            .map(|(c, m1, m2)| BigRational::from_integer(c.clone()) * exact::pow(m1, alpha) * exact::pow(m2, beta))
            .sum()
    }

    /// Floating value at `u - 1 = x > 0`, `v - 1 = y > 0`.
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let lb = self.base.ln();
        let (lx, ly) = (x.ln() / lb, y.ln() / lb);
        self.terms
            .iter()
            .map(|(c, m1, m2)| exact::to_f64(&BigRational::from_integer(c.clone())) * (lx * exact::ln(m1) + ly * exact::ln(m2)).exp())
            .sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(c, m1, m2)| {
                    json!([
                        exact::int_json(c),
                        exact::int_json(m1.numer()),
                        exact::int_json(m1.denom()),
                        exact::int_json(m2.numer()),
                        exact::int_json(m2.denom())
                    ])
                })
                .collect(),
        )
    }
}

/// Both sides of the single-element recursion
/// `T_P = (card(E)/card(E-x))^α T_{P\x} + (b/card(x))^β T_{P/x}` at integer `(α, β)`.
pub fn tutte_recursion_sides(p: &RankTable, x: usize, alpha: i64, beta: i64) -> (BigRational, BigRational) {
    let e = p.ground();
    let xs = Subset::singleton(x);
    let lhs = tutte(p).eval_exact(alpha, beta);
    let del = tutte(&p.delete(xs)).eval_exact(alpha, beta);
    let con = tutte(&p.contract(xs)).eval_exact(alpha, beta);
    let f1 = exact::pow(&(p.card(e) / p.card(e.without(x))), alpha);
    let f2 = exact::pow(&(p.base().value() / p.card(xs)), beta);
    (lhs, f1 * del + f2 * con)
}

/// The classical Tutte polynomial of a table with integer ranks, as
/// coefficients of `(u-1)^i (v-1)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntTutte {
    pub coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl IntTutte {
    pub fn from_table(p: &RankTable) -> Option<IntTutte> {
        let re = p.integer_rank(p.ground())?;
        let mut coeffs = BTreeMap::new();
        for s in Subset::all(p.n()) {
            let rs = p.integer_rank(s)?;
            if rs > re || rs > s.len() {
                return None;
            }
            *coeffs.entry(((re - rs) as u32, (s.len() - rs) as u32)).or_insert_with(BigInt::zero) += 1;
        }
        Some(IntTutte { coeffs })
    }

    pub fn eval(&self, u: &BigInt, v: &BigInt) -> BigInt {
        let (x, y): (BigInt, BigInt) = (u - 1, v - 1);
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize))
            .sum()
    }

    /// Coefficients of `u^i v^j` after expanding the binomials.
    pub fn expand_uv(&self) -> BTreeMap<(u32, u32), BigInt> {
        let mut out: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(i, j), c) in &self.coeffs {
            for a in 0..=i {
                for b in 0..=j {
                    let sign = if (i - a + j - b) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    let term = c * binom(i, a) * binom(j, b) * sign;
                    *out.entry((a, b)).or_insert_with(BigInt::zero) += term;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
