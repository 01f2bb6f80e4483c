use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{check_cap, Error, Result};
use crate::exact;
use crate::groups::{RawSubset, Subgroup};
use crate::subset::{Subset, MAX_GROUND};

/// The logarithm base `b` of a rank function.
#[derive(Clone, Debug)]
pub enum Base {
    /// `b = |Γ|`, recorded as such.
    GroupOrder(u64),
    Rational(BigRational),
}

impl Base {
    pub fn value(&self) -> BigRational {
        match self {
            Base::GroupOrder(q) => exact::big(*q),
            Base::Rational(r) => r.clone(),
        }
    }

    pub fn ln(&self) -> f64 {
        exact::ln(&self.value())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Base::GroupOrder(q) => json!({"kind": "group_order", "value": q}),
            Base::Rational(r) => json!({"kind": "rational", "value": exact::fmt(r)}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Base> {
        let bad = || Error::Parse("bad base object".into());
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(bad)?;
        let value = v.get("value").ok_or_else(bad)?;
        let text = match value {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(bad()),
        };
        match kind {
            "group_order" => Ok(Base::GroupOrder(text.parse().map_err(|_| bad())?)),
            "rational" => Base::rational(exact::parse(&text).ok_or_else(bad)?),
            _ => Err(bad()),
        }
    }

    pub fn rational(r: BigRational) -> Result<Base> {
        if !r.is_positive() || r.is_one() {
            return Err(Error::Domain(format!("base must be positive and different from 1, got {}", exact::fmt(&r))));
        }
        Ok(Base::Rational(r))
    }
}

impl PartialEq for Base {
    fn eq(&self, other: &Self) -> bool {
        self.value() == other.value()
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", exact::fmt(&self.value()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Counted from a subgroup; the axioms hold by construction.
    Subgroup,
    /// Counted from an arbitrary subset of tuples; nothing is guaranteed.
    Unvalidated,
    /// Produced from another table (minor, dual) or given explicitly.
    Derived,
}

/// A set function stored multiplicatively: `card(S) = b^{r(S)}`.
#[derive(Clone, Debug)]
pub struct RankTable {
    n: usize,
    base: Base,
    card: Vec<BigRational>,
    origin: Origin,
}

impl PartialEq for RankTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.base == other.base && self.card == other.card
    }
}

/// `P(H, b)`: `card(S) = |H_S|`.
pub fn rank_table(h: &Subgroup, base: Base) -> Result<RankTable> {
    let n = h.n();
    check_cap("ground set size", n as u128, MAX_GROUND as u128)?;
    let card = Subset::all(n).map(|s| exact::big(h.card_on(s))).collect();
    Ok(RankTable { n, base, card, origin: Origin::Subgroup })
}

/// The same counting for a set that need not be a subgroup.
pub fn rank_table_from_subset(l: &RawSubset, base: Base) -> Result<RankTable> {
    let n = l.parent().n();
    check_cap("ground set size", n as u128, MAX_GROUND as u128)?;
    let card = Subset::all(n).map(|s| exact::big(l.card_on(s))).collect();
    Ok(RankTable { n, base, card, origin: Origin::Unvalidated })
}

impl RankTable {
    /// A table from explicit values indexed by bitmask.
    pub fn from_cards(n: usize, base: Base, card: Vec<BigRational>) -> Result<RankTable> {
        check_cap("ground set size", n as u128, MAX_GROUND as u128)?;
        if card.len() != 1 << n {
            return Err(Error::Domain(format!("expected {} values, got {}", 1u64 << n, card.len())));
        }
        if let Some(i) = card.iter().position(|c| !c.is_positive()) {
            return Err(Error::Domain(format!("card{} must be positive", Subset(i as u32))));
        }
        Ok(RankTable { n, base, card, origin: Origin::Derived })
    }

    pub fn from_fn(n: usize, base: Base, f: impl Fn(Subset) -> BigRational) -> Result<RankTable> {
        check_cap("ground set size", n as u128, MAX_GROUND as u128)?;
        Self::from_cards(n, base, Subset::all(n).map(f).collect())
    }

    /// `U_{r,n}` with `card(S) = q^{min(r,|S|)}` and base `q`.
    pub fn uniform(r: usize, n: usize, q: u64) -> Result<RankTable> {
        let qb = exact::big(q);
        Self::from_fn(n, Base::GroupOrder(q), |s| exact::pow(&qb, s.len().min(r) as i64))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn card(&self, s: Subset) -> &BigRational {
        &self.card[s.index()]
    }

    pub fn cards(&self) -> &[BigRational] {
        &self.card
    }

    /// `r(S) = log_b card(S)` as a float.
    pub fn rank(&self, s: Subset) -> f64 {
        exact::ln(self.card(s)) / self.base.ln()
    }

    /// `r(S)` when it is an integer.
    pub fn integer_rank(&self, s: Subset) -> Option<usize> {
        exact::exact_log(self.card(s), &self.base.value(), self.n.max(64))
    }

    /// Human-readable rank: an integer when exact, else `log_b m`.
    pub fn rank_string(&self, s: Subset) -> String {
        match self.integer_rank(s) {
            Some(k) => k.to_string(),
            None => format!("log_{} {}", self.base, exact::fmt(self.card(s))),
        }
    }

    pub fn with_base(&self, base: Base) -> RankTable {
        RankTable { base, ..self.clone() }
    }

    pub fn is_loop(&self, x: usize) -> bool {
        self.card(Subset::singleton(x)).is_one()
    }

    pub fn loops(&self) -> Subset {
        Subset::from_elements((0..self.n).filter(|&x| self.is_loop(x)))
    }

    /// `x` is a coloop when `r(E) = r(E - x) + r(x)` and `r(x) > 0`.
    pub fn is_coloop(&self, x: usize) -> bool {
        let e = self.ground();
        let cx = self.card(Subset::singleton(x));
        !cx.is_one() && self.card(e) == &(self.card(e.without(x)) * cx)
    }

    pub fn coloops(&self) -> Subset {
        Subset::from_elements((0..self.n).filter(|&x| self.is_coloop(x)))
    }

    /// Coloops of an a-polymatroid additionally need `r(x) = a_x`.
    pub fn alpha_coloops(&self, a: &AlphaVector) -> Subset {
        Subset::from_elements((0..self.n).filter(|&x| self.is_coloop(x) && self.card(Subset::singleton(x)) == &a.a[x]))
    }

    /// `P \ S`: the restriction to `E - S`, reindexed in increasing order.
    pub fn delete(&self, s: Subset) -> RankTable {
        let rest = s.complement(self.n);
        let m = rest.len();
        let card = Subset::all(m).map(|t| self.card(t.lift_into(rest)).clone()).collect();
        RankTable { n: m, base: self.base.clone(), card, origin: Origin::Derived }
    }

    /// `P / S`: `card'(T) = card(S ∪ T) / card(S)` on `E - S`.
    pub fn contract(&self, s: Subset) -> RankTable {
        let rest = s.complement(self.n);
        let m = rest.len();
        let cs = self.card(s);
        let card = Subset::all(m).map(|t| self.card(t.lift_into(rest).union(s)) / cs).collect();
        RankTable { n: m, base: self.base.clone(), card, origin: Origin::Derived }
    }

    /// Relabels the ground set: element `x` becomes `perm[x]`.
    pub fn permute(&self, perm: &[usize]) -> RankTable {
        let mut card = vec![BigRational::zero(); self.card.len()];
        for s in Subset::all(self.n) {
            card[Subset::from_elements(s.iter().map(|x| perm[x])).index()] = self.card(s).clone();
        }
        RankTable { n: self.n, base: self.base.clone(), card, origin: self.origin }
    }

    pub fn is_integral(&self) -> bool {
        self.card.iter().all(|c| c.is_integer())
    }

    pub fn to_json(&self) -> Value {
        let mut card = Map::new();
        for s in Subset::all(self.n) {
            card.insert(s.bits().to_string(), Value::from(exact::fmt(self.card(s))));
        }
        json!({"n": self.n, "b": self.base.to_json(), "card": card})
    }

    pub fn from_json(v: &Value) -> Result<RankTable> {
        let bad = |m: &str| Error::Parse(format!("rank table JSON: {m}"));
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
        check_cap("ground set size", n as u128, MAX_GROUND as u128)?;
        let base = Base::from_json(v.get("b").ok_or_else(|| bad("missing b"))?)?;
        let obj = v.get("card").and_then(Value::as_object).ok_or_else(|| bad("missing card"))?;
        let mut card = vec![BigRational::zero(); 1 << n];
        let mut filled = vec![false; 1 << n];
        for (k, val) in obj {
            let mask: usize = k.parse().map_err(|_| bad("bad bitmask key"))?;
            if mask >= card.len() {
                return Err(bad("bitmask out of range"));
            }
            let text = match val {
                Value::String(s) => s.clone(),
                Value::Number(x) => x.to_string(),
                _ => return Err(bad("bad card value")),
            };
            card[mask] = exact::parse(&text).ok_or_else(|| bad("bad card value"))?;
            filled[mask] = true;
        }
        if let Some(i) = filled.iter().position(|f| !f) {
            return Err(bad(&format!("no value for bitmask {i}")));
        }
        Self::from_cards(n, base, card)
    }
}

/// One axiom's verdict with the first violating configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck {
    pub holds: bool,
    pub witness: Option<String>,
}

impl AxiomCheck {
    fn ok() -> Self {
        AxiomCheck { holds: true, witness: None }
    }

    fn fail(w: String) -> Self {
        AxiomCheck { holds: false, witness: Some(w) }
    }

    fn to_json(&self) -> Value {
        json!({"holds": self.holds, "witness": self.witness})
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub p1: AxiomCheck,
    pub p2: AxiomCheck,
    pub p3: AxiomCheck,
    pub p3_prime: AxiomCheck,
    pub subcardinal: AxiomCheck,
    pub integer_valued: AxiomCheck,
}

impl AxiomReport {
    pub fn is_polymatroid(&self) -> bool {
        self.p1.holds && self.p2.holds && self.p3.holds
    }

    pub fn is_matroid(&self) -> bool {
        self.is_polymatroid() && self.subcardinal.holds && self.integer_valued.holds
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "P1": self.p1.to_json(),
            "P2": self.p2.to_json(),
            "P3": self.p3.to_json(),
            "P3_prime": self.p3_prime.to_json(),
            "subcardinal": self.subcardinal.to_json(),
            "integer_valued": self.integer_valued.to_json(),
            "polymatroid": self.is_polymatroid(),
            "matroid": self.is_matroid(),
        })
    }
}

/// Above this size the pairwise axioms are checked in their local forms
/// (`T = S ∪ y`), which are equivalent.
const FULL_PAIR_CHECK: usize = 10;

/// Checks P1-P3, P3', subcardinality and integrality exactly.
pub fn check_axioms(p: &RankTable) -> AxiomReport {
    let n = p.n;
    let c = |s: Subset| p.card(s);
    let p1 = if c(Subset::EMPTY).is_one() {
        AxiomCheck::ok()
    } else {
        AxiomCheck::fail(format!("card(∅) = {}", exact::fmt(c(Subset::EMPTY))))
    };

    let mut p2 = AxiomCheck::ok();
    'p2: for s in Subset::all(n) {
        for x in s.complement(n).iter() {
            if c(s.with(x)) < c(s) {
                p2 = AxiomCheck::fail(format!("r({}) > r({})", s, s.with(x)));
                break 'p2;
            }
        }
    }

    let mut p3 = AxiomCheck::ok();
    let mut p3p = AxiomCheck::ok();
    let submod_fail = |s: Subset, t: Subset| c(s) * c(t) < c(s.union(t)) * c(s.intersection(t));
    // S ⊆ T, x ∉ T: card(S+x) card(T) >= card(T+x) card(S)
    let dimret_fail = |s: Subset, t: Subset, x: usize| c(s.with(x)) * c(t) < c(t.with(x)) * c(s);
    if n <= FULL_PAIR_CHECK {
        'p3: for s in Subset::all(n) {
            for t in Subset::all(n) {
                if submod_fail(s, t) {
                    p3 = AxiomCheck::fail(format!("r({s}) + r({t}) < r({}) + r({})", s.union(t), s.intersection(t)));
                    break 'p3;
                }
            }
        }
        'p3p: for t in Subset::all(n) {
            for s in t.subsets() {
                for x in t.complement(n).iter() {
                    if dimret_fail(s, t, x) {
                        p3p = AxiomCheck::fail(format!("S={s}, T={t}, x={}", x + 1));
                        break 'p3p;
                    }
                }
            }
        }
    } else {
        'local: for s in Subset::all(n) {
            let out = s.complement(n).elements();
            for (i, &x) in out.iter().enumerate() {
                for &y in &out[i + 1..] {
                    let (a, b) = (s.with(x), s.with(y));
                    if p3.holds && submod_fail(a, b) {
                        p3 = AxiomCheck::fail(format!("r({a}) + r({b}) < r({}) + r({s})", a.union(b)));
                    }
                    if p3p.holds && dimret_fail(s, b, x) {
                        p3p = AxiomCheck::fail(format!("S={s}, T={b}, x={}", x + 1));
                    }
                    if !p3.holds && !p3p.holds {
                        break 'local;
                    }
                }
            }
        }
    }

    let b = p.base.value();
    let mut subcardinal = AxiomCheck::ok();
    let mut integer_valued = AxiomCheck::ok();
    let mut bpow = vec![BigRational::one()];
    for k in 1..=n {
        let next = &bpow[k - 1] * &b;
        bpow.push(next);
    }
    for s in Subset::all(n) {
        if subcardinal.holds && c(s) > &bpow[s.len()] {
            subcardinal = AxiomCheck::fail(format!("r({s}) > |{s}|"));
        }
        if integer_valued.holds && !bpow.contains(c(s)) {
            integer_valued = AxiomCheck::fail(format!("r({s}) = {} is not an integer", p.rank_string(s)));
        }
    }
    AxiomReport { p1, p2, p3, p3_prime: p3p, subcardinal, integer_valued }
}

/// Every unordered pair `{S, T}` with `r(S) + r(T) < r(S ∪ T) + r(S ∩ T)`,
/// listed with `S` before `T` in colex order.
pub fn submodularity_violations(p: &RankTable) -> Vec<(Subset, Subset)> {
    let n = p.n;
    let c = |s: Subset| p.card(s);
    let mut out = Vec::new();
    for s in Subset::all(n) {
        for t in Subset::all(n).filter(|t| t.bits() > s.bits()) {
            if c(s) * c(t) < c(s.union(t)) * c(s.intersection(t)) {
                out.push((s, t));
            }
        }
    }
    out
}

/// Multiplicative exponent vector `A_x = b^{a_x}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaVector {
    pub a: Vec<BigRational>,
}

impl AlphaVector {
    pub fn new(a: Vec<BigRational>) -> Result<AlphaVector> {
        if let Some(x) = a.iter().position(|v| !v.is_positive()) {
            return Err(Error::Domain(format!("A_{} must be positive", x + 1)));
        }
        Ok(AlphaVector { a })
    }

    pub fn uniform(n: usize, value: u64) -> AlphaVector {
        AlphaVector { a: vec![exact::big(value); n] }
    }

    /// `A_x = |Γ_x|` for the factors of a product.
    pub fn factor_orders(g: &crate::groups::GroupProduct) -> AlphaVector {
        AlphaVector { a: g.factors().map(|f| exact::big(f.order() as u64)).collect() }
    }

    pub fn product_on(&self, s: Subset) -> BigRational {
        s.iter().fold(BigRational::one(), |acc, x| acc * &self.a[x])
    }

    pub fn restrict(&self, s: Subset) -> AlphaVector {
        AlphaVector { a: s.iter().map(|x| self.a[x].clone()).collect() }
    }
}

/// The a-dual: `card*(S) = card(E - S) · ∏_{x∈S} A_x / card(E)`.
pub fn a_dual(p: &RankTable, a: &AlphaVector) -> Result<RankTable> {
    if a.a.len() != p.n {
        return Err(Error::Domain(format!("alpha vector has {} entries, ground set has {}", a.a.len(), p.n)));
    }
    for x in 0..p.n {
        if p.card(Subset::singleton(x)) > &a.a[x] {
            return Err(Error::Domain(format!(
                "r({{{}}}) exceeds a_{}: card {} > A {}",
                x + 1,
                x + 1,
                exact::fmt(p.card(Subset::singleton(x))),
                exact::fmt(&a.a[x])
            )));
        }
    }
    let e = p.ground();
    let ce = p.card(e);
    let card = Subset::all(p.n).map(|s| p.card(s.complement(p.n)) * a.product_on(s) / ce).collect();
    Ok(RankTable { n: p.n, base: p.base.clone(), card, origin: Origin::Derived })
}

pub(crate) fn to_u64(v: &BigRational) -> Option<u64> {
    if v.is_integer() {
        v.numer().to_u64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hs3_table() {
        let p = rank_table(&fixtures::h_s3(), Base::GroupOrder(6)).unwrap();
        let cards: Vec<String> = p.cards().iter().map(exact::fmt).collect();
        assert_eq!(cards, ["1", "2", "6", "6"]);
        assert_eq!(p.rank_string(Subset::singleton(0)), "log_6 2");
        assert_eq!(p.rank_string(Subset::full(2)), "1");
        assert!(check_axioms(&p).is_polymatroid());
    }

    #[test]
    fn hs3_dual() {
        let p = rank_table(&fixtures::h_s3(), Base::GroupOrder(6)).unwrap();
        let d = a_dual(&p, &AlphaVector::uniform(2, 6)).unwrap();
        let cards: Vec<String> = d.cards().iter().map(exact::fmt).collect();
        assert_eq!(cards, ["1", "6", "2", "6"]);
        assert_eq!(a_dual(&d, &AlphaVector::uniform(2, 6)).unwrap(), p);
    }

    #[test]
    fn dual_precondition() {
        let p = RankTable::uniform(1, 2, 4).unwrap();
        assert!(a_dual(&p, &AlphaVector::uniform(2, 2)).is_err());
    }

    #[test]
    fn uniform_dual() {
        let u13 = RankTable::uniform(1, 3, 2).unwrap();
        let d = a_dual(&u13, &AlphaVector::uniform(3, 2)).unwrap();
        assert_eq!(d, RankTable::uniform(2, 3, 2).unwrap());
        let rep = check_axioms(&d);
        assert!(rep.is_matroid());
    }

    #[test]
    fn minors_of_hs3() {
        let h = fixtures::h_s3();
        let p = rank_table(&h, Base::GroupOrder(6)).unwrap();
        let s = Subset::singleton(0);
        let k = crate::groups::kernel_contract(&h, s).unwrap();
        assert_eq!(rank_table(&k, Base::GroupOrder(6)).unwrap(), p.contract(s));
        let d = crate::groups::project(&h, s.complement(2));
        assert_eq!(rank_table(&d, Base::GroupOrder(6)).unwrap(), p.delete(s));
        assert_eq!(p.contract(Subset::EMPTY), p);
    }

    #[test]
    fn json_round_trip() {
        let p = rank_table(&fixtures::h_s3(), Base::GroupOrder(6)).unwrap();
        let d = a_dual(&p, &AlphaVector::uniform(2, 6)).unwrap().contract(Subset::singleton(1));
        for t in [p, d, RankTable::uniform(2, 3, 2).unwrap().with_base(Base::rational(exact::int(3) / exact::int(2)).unwrap())] {
            let back = RankTable::from_json(&t.to_json()).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn example_l_is_not_submodular() {
        let l = fixtures::example_l();
        let p = rank_table_from_subset(&l, Base::GroupOrder(2)).unwrap();
        assert_eq!(p.origin(), Origin::Unvalidated);
        let c = |v: &[usize]| p.card(Subset::from_elements(v.iter().copied())).clone();
        assert!(c(&[0, 1]) * c(&[1, 2]) < c(&[0, 1, 2]) * c(&[1]));
        assert!(!check_axioms(&p).p3.holds);
        let v = submodularity_violations(&p);
        assert_eq!(v, vec![(Subset::from_elements([0, 1]), Subset::from_elements([1, 2]))]);
    }

    #[test]
    fn trivial_subgroup_is_all_loops() {
        let g = crate::groups::GroupProduct::power(crate::groups::FiniteGroup::cyclic(2).unwrap(), 3).unwrap();
        let p = rank_table(&Subgroup::trivial(g), Base::GroupOrder(2)).unwrap();
        assert!(p.cards().iter().all(|c| c.is_one()));
        assert_eq!(p.loops(), Subset::full(3));
    }
}
