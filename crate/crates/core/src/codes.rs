//! Weight enumerators of group codes `H ≤ Γ^n` and of their duals `R(H)`,
//! with exact checks of Greene's and MacWilliams' identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact;
use crate::groups::Subgroup;
use crate::polymatroid::{rank_table, tutte, Base};
use crate::reptheory::{exact_triv_distribution, RSpectrum};
use crate::subset::Subset;

/// `W(t) = Σ c_j t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub coeffs: Vec<BigInt>,
}

impl WeightEnumerator {
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + exact::to_f64(&BigRational::from_integer(c.clone())))
    }

    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(exact::int_json).collect())
    }
}

impl std::fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}t")?,
                _ if c.is_one() => write!(f, "t^{j}")?,
                _ => write!(f, "{c}t^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn require_power(h: &Subgroup) -> Result<u64> {
    if !h.parent().is_power() {
        return Err(Error::Capability("Greene's identity needs G = Γ^n with all factors equal".into()));
    }
    Ok(h.parent().factor(0).order() as u64)
}

/// `W_H(t) = Σ_h t^{w(h)}`, `w(h)` the number of non-identity coordinates.
pub fn weight_enumerator(h: &Subgroup) -> Result<WeightEnumerator> {
    let g = h.parent();
    let mut coeffs = vec![BigInt::zero(); h.n() + 1];
    for t in h.elements() {
        let w = (0..h.n()).filter(|&x| !g.is_identity_at(t, x)).count();
        coeffs[w] += 1;
    }
    Ok(WeightEnumerator { coeffs })
}

/// `W_{R(H)}(t) = Σ_ρ (mult · dim ρ) t^{n - |triv ρ|}` from group orders alone.
pub fn dual_weight_enumerator(h: &Subgroup) -> Result<WeightEnumerator> {
    let n = h.n();
    let dist = exact_triv_distribution(h);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for s in Subset::all(n) {
        coeffs[n - s.len()] += &dist[s.index()];
    }
    Ok(WeightEnumerator { coeffs })
}

/// The same enumerator read off an explicit spectrum.
pub fn dual_weight_from_spectrum(sp: &RSpectrum) -> WeightEnumerator {
    let n = sp.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for e in sp.entries() {
        coeffs[n - e.triv.len()] += e.weight();
    }
    WeightEnumerator { coeffs }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactPoint {
    pub a: i64,
    pub t: BigRational,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoint {
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl FloatPoint {
    pub fn rel_err(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.lhs.abs().max(self.rhs.abs()).max(f64::MIN_POSITIVE)
    }
}

pub const FLOAT_REL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GreeneReport {
    pub dual: bool,
    pub exact: Vec<ExactPoint>,
    pub float: Vec<FloatPoint>,
}

impl GreeneReport {
    pub fn matches(&self) -> bool {
        self.exact.iter().all(|p| p.lhs == p.rhs) && self.float.iter().all(|p| p.rel_err() <= FLOAT_REL_TOL)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "identity": if self.dual { "dual-greene" } else { "greene" },
            "exact": self.exact.iter().map(|p| json!({
                "a": p.a, "t": exact::fmt(&p.t), "lhs": exact::fmt(&p.lhs), "rhs": exact::fmt(&p.rhs), "match": p.lhs == p.rhs,
            })).collect::<Vec<_>>(),
            "float": self.float.iter().map(|p| json!({
                "t": p.t, "lhs": p.lhs, "rhs": p.rhs, "rel_err": p.rel_err(),
            })).collect::<Vec<_>>(),
            "tolerance": FLOAT_REL_TOL,
            "match": self.matches(),
        })
    }
}

fn samples(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(0.05..0.95)).collect()
}

/// `W_H(t) = (1-t)^{r(E)} t^{n-r(E)} T_P((1+(q-1)t)/(1-t), 1/t)`, exactly at
/// `t_a = q^{a-1}/(1+q^{a-1})` and in floating point at random `t`.
pub fn greene_check(h: &Subgroup, a_values: &[i64], float_samples: usize, seed: u64) -> Result<GreeneReport> {
    let q = require_power(h)?;
    let n = h.n() as i64;
    let w = weight_enumerator(h)?;
    let p = rank_table(h, Base::GroupOrder(q))?;
    let tp = tutte(&p);
    let qb = exact::big(q);
    let hb = exact::big(h.order() as u64);
    let mut exact_pts = Vec::new();
    for &a in a_values {
        let s = exact::pow(&qb, a - 1);
        let t = &s / (BigRational::one() + &s);
        let lhs = w.eval(&t);
        let rhs = exact::pow(&t, n) * exact::pow(&hb, 1 - a) * tp.eval_exact(a, 1 - a);
        exact_pts.push(ExactPoint { a, t, lhs, rhs });
    }
    let r = (h.order() as f64).ln() / (q as f64).ln();
    let qf = q as f64;
    let float = samples(float_samples, seed)
        .into_iter()
        .map(|t| {
            let lhs = w.eval_f64(t);
            let pre = (1.0 - t).powf(r) * t.powf(n as f64 - r);
            let rhs = pre * tp.eval_f64(qf * t / (1.0 - t), (1.0 - t) / t);
            FloatPoint { t, lhs, rhs }
        })
        .collect();
    Ok(GreeneReport { dual: false, exact: exact_pts, float })
}

/// `W_{R(H)}(t) = t^{r(E)} (1-t)^{n-r(E)} T_P(1/t, (1+(q-1)t)/(1-t))`, exactly
/// at `t/(1-t) = q^a` and in floating point at random `t`.
pub fn dual_greene_check(h: &Subgroup, a_values: &[i64], float_samples: usize, seed: u64) -> Result<GreeneReport> {
    let q = require_power(h)?;
    let n = h.n() as i64;
    let w = dual_weight_enumerator(h)?;
    let p = rank_table(h, Base::GroupOrder(q))?;
    let tp = tutte(&p);
    let qb = exact::big(q);
    let hb = exact::big(h.order() as u64);
    let mut exact_pts = Vec::new();
    for &a in a_values {
        let s = exact::pow(&qb, a);
        let t = &s / (BigRational::one() + &s);
        let lhs = w.eval(&t);
        let rhs = exact::pow(&(BigRational::one() - &t), n) * exact::pow(&hb, a) * tp.eval_exact(-a, a + 1);
        exact_pts.push(ExactPoint { a, t, lhs, rhs });
    }
    let r = (h.order() as f64).ln() / (q as f64).ln();
    let qf = q as f64;
    let float = samples(float_samples, seed)
        .into_iter()
        .map(|t| {
            let lhs = w.eval_f64(t);
            let pre = t.powf(r) * (1.0 - t).powf(n as f64 - r);
            let rhs = pre * tp.eval_f64((1.0 - t) / t, qf * t / (1.0 - t));
            FloatPoint { t, lhs, rhs }
        })
        .collect();
    Ok(GreeneReport { dual: true, exact: exact_pts, float })
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[BigInt], k: usize) -> Vec<BigInt> {
    (0..k).fold(vec![BigInt::one()], |acc, _| poly_mul(&acc, a))
}

/// `Σ_j c_j (1-t)^j (1+(q-1)t)^{n-j}` as coefficients.
pub fn macwilliams_transform(w: &WeightEnumerator, q: u64, n: usize) -> Vec<BigInt> {
    let one_minus = [BigInt::one(), -BigInt::one()];
    let one_plus = [BigInt::one(), BigInt::from(q) - 1];
    let mut out = vec![BigInt::zero(); n + 1];
    for (j, c) in w.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = poly_mul(&poly_pow(&one_minus, j), &poly_pow(&one_plus, n - j));
        for (i, v) in term.into_iter().enumerate() {
            out[i] += c * v;
        }
    }
    out
}

/// `Σ_S c_S ∏_{x∈S} (1+(|Γ_x|-1)t) ∏_{x∉S} (1-t)` for counts indexed by the
/// set `S` of trivial coordinates; reduces to the transform above when all
/// factors have order `q`.
pub fn macwilliams_transform_sets(counts: &[BigInt], orders: &[u64]) -> Vec<BigInt> {
    let n = orders.len();
    let mut out = vec![BigInt::zero(); n + 1];
    for s in Subset::all(n) {
        let c = &counts[s.index()];
        if c.is_zero() {
            continue;
        }
        let mut term = vec![BigInt::one()];
        for (x, &q) in orders.iter().enumerate() {
            let f = if s.contains(x) { [BigInt::one(), BigInt::from(q) - 1] } else { [BigInt::one(), -BigInt::one()] };
            term = poly_mul(&term, &f);
        }
        for (i, v) in term.into_iter().enumerate() {
            out[i] += c * v;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct MacWilliamsReport {
    /// `|H| · W_{R(H)}(t)`.
    pub lhs: Vec<BigInt>,
    /// The transform of the identity-set counts of `H`.
    pub rhs: Vec<BigInt>,
    /// `|H| · T(W_{R(H)})` against `|G| W_H`.
    pub double_lhs: Vec<BigInt>,
    pub double_rhs: Vec<BigInt>,
}

impl MacWilliamsReport {
    pub fn matches(&self) -> bool {
        self.lhs == self.rhs && self.double_lhs == self.double_rhs
    }

    /// Lowest degree where the cleared identity fails.
    pub fn first_mismatch(&self) -> Option<usize> {
        (0..self.lhs.len().max(self.rhs.len())).find(|&i| self.lhs.get(i) != self.rhs.get(i))
    }

    pub fn to_json(&self) -> Value {
        let arr = |v: &[BigInt]| v.iter().map(exact::int_json).collect::<Vec<_>>();
        json!({
            "schema": 1,
            "lhs": arr(&self.lhs),
            "rhs": arr(&self.rhs),
            "double_lhs": arr(&self.double_lhs),
            "double_rhs": arr(&self.double_rhs),
            "first_mismatch": self.first_mismatch(),
            "match": self.matches(),
        })
    }
}

/// The cleared identity `|H| W_{R(H)}(t) = Σ_h ∏_{x∈I(h)} (1+(|Γ_x|-1)t) ∏_{x∉I(h)} (1-t)`,
/// which for `G = Γ^n` reads `Σ_h (1-t)^{w(h)} (1+(q-1)t)^{n-w(h)}`.
pub fn macwilliams_check(h: &Subgroup) -> Result<MacWilliamsReport> {
    let g = h.parent();
    let n = h.n();
    let orders: Vec<u64> = g.factors().map(|f| f.order() as u64).collect();
    let wr = dual_weight_enumerator(h)?;
    let hb = BigInt::from(h.order());
    let lhs: Vec<BigInt> = wr.coeffs.iter().map(|c| c * &hb).collect();
    let mut by_identity = vec![BigInt::zero(); 1 << n];
    for t in h.elements() {
        by_identity[crate::critical::identity_support(t, g).index()] += 1;
    }
    let rhs = macwilliams_transform_sets(&by_identity, &orders);
    let dist = exact_triv_distribution(h);
    let double_lhs: Vec<BigInt> = macwilliams_transform_sets(&dist, &orders).into_iter().map(|c| c * &hb).collect();
    let gb = BigInt::from(g.order());
    let double_rhs: Vec<BigInt> = weight_enumerator(h)?.coeffs.iter().map(|c| c * &gb).collect();
    Ok(MacWilliamsReport { lhs, rhs, double_lhs, double_rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reptheory::{builtin_tables, r_spectrum};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hs3_enumerators() {
        let h = fixtures::h_s3();
        assert_eq!(weight_enumerator(&h).unwrap().coeffs, ints(&[1, 2, 3]));
        let wr = dual_weight_enumerator(&h).unwrap();
        assert_eq!(wr.coeffs, ints(&[1, 2, 3]));
        let sp = r_spectrum(&h, &builtin_tables(h.parent()).unwrap()).unwrap();
        assert_eq!(dual_weight_from_spectrum(&sp), wr);
        assert_eq!(wr.to_string(), "1 + 2t + 3t^2");
    }

    #[test]
    fn full_and_trivial() {
        let g = crate::groups::GroupProduct::power(crate::groups::FiniteGroup::cyclic(3).unwrap(), 3).unwrap();
        let full = Subgroup::full(g.clone(), 100).unwrap();
        assert_eq!(weight_enumerator(&full).unwrap().coeffs, ints(&[1, 6, 12, 8]));
        assert_eq!(dual_weight_enumerator(&full).unwrap().coeffs, ints(&[1, 0, 0, 0]));
        let triv = Subgroup::trivial(g);
        assert_eq!(weight_enumerator(&triv).unwrap().coeffs, ints(&[1, 0, 0, 0]));
        assert_eq!(dual_weight_enumerator(&triv).unwrap().coeffs, ints(&[1, 6, 12, 8]));
    }

    #[test]
    fn hs3_identities() {
        let h = fixtures::h_s3();
        let m = macwilliams_check(&h).unwrap();
        assert_eq!(m.lhs, ints(&[6, 12, 18]));
        assert!(m.matches());
        let g = greene_check(&h, &[-1, 0, 1, 2], 20, 7).unwrap();
        assert!(g.matches(), "{:?}", g);
        assert_eq!(g.exact[2].lhs, BigRational::new(11.into(), 4.into()));
        let d = dual_greene_check(&h, &[-1, 0, 1, 2], 20, 7).unwrap();
        assert!(d.matches(), "{:?}", d);
    }

    #[test]
    fn heterogeneous_products() {
        let g = crate::groups::GroupProduct::new(vec![
            crate::groups::FiniteGroup::cyclic(2).unwrap(),
            crate::groups::FiniteGroup::symmetric(3).unwrap(),
            crate::groups::FiniteGroup::cyclic(4).unwrap(),
        ])
        .unwrap();
        let gens = vec![vec![1, 1, 2], vec![0, 3, 1]];
        let h = crate::groups::subgroup_closure(&g, &gens).unwrap();
        assert!(macwilliams_check(&h).unwrap().matches());
        assert!(matches!(greene_check(&h, &[0], 0, 0), Err(Error::Capability(_))));
    }

    #[test]
    fn power_transform_agrees_with_set_transform() {
        let h = fixtures::binary_row_space(&fixtures::BINARY_B);
        let w = weight_enumerator(&h).unwrap();
        let m = macwilliams_check(&h).unwrap();
        assert_eq!(macwilliams_transform(&w, 2, 6), m.rhs);
        assert!(m.matches());
    }
}
