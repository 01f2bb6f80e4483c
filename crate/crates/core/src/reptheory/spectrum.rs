use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::cyclotomic::Cyclotomic;
use crate::error::{check_cap, Error, Result};
use crate::exact;
use crate::groups::{GroupKind, GroupProduct, Subgroup, Tuple};
use crate::polymatroid::{a_dual, char_poly, rank_table, AlphaVector, Base, RankTable};
use crate::subset::Subset;

use super::CharacterTable;

/// One irreducible of the product appearing in `R(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    /// Index of the factor irreducible per coordinate (0 = trivial).
    pub irrep: Vec<usize>,
    pub dim: u64,
    pub triv: Subset,
    pub mult: u64,
}

impl SpectrumEntry {
    pub fn weight(&self) -> u64 {
        self.mult * self.dim
    }
}

/// A multiset of irreducibles of a product, `R(H)` or any other
/// representation given by multiplicities.
#[derive(Clone, Debug)]
pub struct RSpectrum {
    n: usize,
    entries: Vec<SpectrumEntry>,
    labels: Vec<Vec<String>>,
}

impl RSpectrum {
    pub fn from_entries(n: usize, entries: Vec<SpectrumEntry>, labels: Vec<Vec<String>>) -> RSpectrum {
        RSpectrum { n, entries, labels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    /// `ρ_1⊗..⊗ρ_n` using factor labels.
    pub fn label(&self, e: &SpectrumEntry) -> String {
        e.irrep
            .iter()
            .enumerate()
            .map(|(x, &i)| self.labels.get(x).and_then(|l| l.get(i)).cloned().unwrap_or_else(|| i.to_string()))
            .collect::<Vec<_>>()
            .join("⊗")
    }

    /// `Σ mult · dim`.
    pub fn total_dimension(&self) -> u64 {
        self.entries.iter().map(SpectrumEntry::weight).sum()
    }

    /// `Σ_{S ⊆ triv ρ} mult · dim`.
    pub fn aggregate(&self, s: Subset) -> u64 {
        self.entries.iter().filter(|e| s.is_subset_of(e.triv)).map(SpectrumEntry::weight).sum()
    }

    /// `Σ_{triv ρ = S} mult · dim` for every `S`, grouped from the entries.
    pub fn triv_distribution(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); 1 << self.n];
        for e in &self.entries {
            out[e.triv.index()] += e.weight();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "irrep": e.irrep,
                    "label": self.label(e),
                    "dim": e.dim,
                    "mult": e.mult,
                    "triv": e.triv.iter().map(|x| x + 1).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({"schema": 1, "entries": entries, "total_dimension": self.total_dimension()})
    }
}

/// Built-in tables for every factor of `g`.
pub fn builtin_tables(g: &GroupProduct) -> Result<Vec<CharacterTable>> {
    let mut cache: Vec<(usize, CharacterTable)> = Vec::new();
    let mut out = Vec::new();
    for x in 0..g.n() {
        let f = g.factor(x);
        if let Some((_, t)) = cache.iter().find(|(y, _)| g.factor(*y) == f) {
            out.push(t.clone());
            continue;
        }
        let t = CharacterTable::builtin(f)?;
        cache.push((x, t.clone()));
        out.push(t);
    }
    Ok(out)
}

/// Cap on the number of irreducibles of the product examined.
pub const DEFAULT_IRREP_CAP: u128 = 1_000_000;

/// `R(H)`: multiplicity of `ρ` is `(1/|H|) Σ_{h∈H} Π_x χ_{ρ_x}(h_x)`, the
/// multiplicity of `ρ` in the permutation representation on `G/H`.
pub fn r_spectrum(h: &Subgroup, tables: &[CharacterTable]) -> Result<RSpectrum> {
    let g = h.parent();
    let n = g.n();
    if tables.len() != n {
        return Err(Error::Domain(format!("{} character tables for {n} factors", tables.len())));
    }
    for (x, t) in tables.iter().enumerate() {
        if t.group() != g.factor(x) {
            return Err(Error::Domain(format!("character table {} does not belong to factor {}", x + 1, x + 1)));
        }
    }
    let count: u128 = tables.iter().map(|t| t.num_irreps() as u128).product();
    check_cap("number of irreducibles of the product", count, DEFAULT_IRREP_CAP)?;
    let e = tables.iter().fold(1usize, |acc, t| num_integer::lcm(acc, t.root_order()));

    // H as a multiset of class tuples
    let mut class_counts: HashMap<Vec<usize>, i64> = HashMap::new();
    for t in h.elements() {
        let key: Vec<usize> = t.iter().enumerate().map(|(x, &v)| tables[x].class_of(v as usize)).collect();
        *class_counts.entry(key).or_insert(0) += 1;
    }
    let class_counts: Vec<(Vec<usize>, i64)> = class_counts.into_iter().collect();
    let lifted: Vec<Vec<Vec<Cyclotomic>>> = tables
        .iter()
        .map(|t| (0..t.num_irreps()).map(|i| (0..t.classes().len()).map(|c| t.class_value(i, c).lift(e)).collect()).collect())
        .collect();

    let mut entries = Vec::new();
    let mut irrep = vec![0usize; n];
    loop {
        let mut sum = Cyclotomic::int(e, 0);
        for (classes, cnt) in &class_counts {
            let mut prod = Cyclotomic::int(e, *cnt);
            for x in 0..n {
                prod = prod.mul(&lifted[x][irrep[x]][classes[x]]);
            }
            sum = sum.add(&prod);
        }
        let mult = sum
            .div_exact(h.order() as i64)
            .and_then(|v| v.as_integer())
            .unwrap_or_else(|| panic!("non-integral multiplicity {sum} / {} for irrep {irrep:?}: bad character table", h.order()));
        assert!(mult >= 0, "negative multiplicity for irrep {irrep:?}: bad character table");
        if mult > 0 {
            let dim = irrep.iter().enumerate().map(|(x, &i)| tables[x].dim(i)).product();
            let triv = Subset::from_elements((0..n).filter(|&x| irrep[x] == 0));
            entries.push(SpectrumEntry { irrep: irrep.clone(), dim, triv, mult: mult as u64 });
        }
        // odometer, last coordinate fastest
        let mut x = n;
        loop {
            if x == 0 {
                let labels = tables.iter().map(|t| (0..t.num_irreps()).map(|i| t.label(i).to_string()).collect()).collect();
                return Ok(RSpectrum { n, entries, labels });
            }
            x -= 1;
            irrep[x] += 1;
            if irrep[x] < tables[x].num_irreps() {
                break;
            }
            irrep[x] = 0;
        }
    }
}

/// `|G_{E-S}| / |H_{E-S}|`, computed from orders alone.
pub fn aggregate_dimension(h: &Subgroup, s: Subset) -> u128 {
    let rest = s.complement(h.n());
    h.parent().order_on(rest) / h.card_on(rest) as u128
}

/// `Σ_{triv ρ = S} mult · dim` for every `S`, by Möbius inversion of
/// [`aggregate_dimension`] over supersets.
pub fn exact_triv_distribution(h: &Subgroup) -> Vec<BigInt> {
    let n = h.n();
    let mut f: Vec<BigInt> = Subset::all(n).map(|s| BigInt::from(aggregate_dimension(h, s))).collect();
    superset_mobius(&mut f, n);
    assert!(f.iter().all(|v| v >= &BigInt::zero()), "negative dimension count in triv distribution");
    f
}

/// In place: `f(S) <- Σ_{T ⊇ S} (-1)^{|T-S|} f(T)`.
fn superset_mobius(f: &mut [BigInt], n: usize) {
    for x in 0..n {
        for s in 0..f.len() {
            if s >> x & 1 == 0 {
                let hi = f[s | 1 << x].clone();
                f[s] -= hi;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualCrapoRotaReport {
    pub k: u32,
    /// From the triv distribution by subset convolution.
    pub lhs: BigInt,
    /// From explicit k-tuples of spectrum entries, when tables were given.
    pub lhs_spectrum: Option<BigInt>,
    pub rhs: BigRational,
}

impl DualCrapoRotaReport {
    pub fn matches(&self) -> bool {
        let ok = self.rhs.is_integer() && self.rhs.numer() == &self.lhs;
        ok && self.lhs_spectrum.as_ref().is_none_or(|v| v == &self.lhs)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "k": self.k,
            "lhs": exact::int_json(&self.lhs),
            "lhs_spectrum": self.lhs_spectrum.as_ref().map(exact::int_json),
            "rhs_num": exact::int_json(self.rhs.numer()),
            "rhs_den": exact::int_json(self.rhs.denom()),
            "match": self.matches(),
        })
    }
}

/// The a-dual of `P(H, b)` with `A_x = |Γ_x|`.
pub fn dual_table(h: &Subgroup, base: Base) -> Result<RankTable> {
    a_dual(&rank_table(h, base)?, &AlphaVector::factor_orders(h.parent()))
}

/// Weighted count of k-tuples of irreducibles in `R(H)` whose triv sets
/// have empty intersection, against `χ_{P*}(b^k)`.
pub fn dual_crapo_rota(h: &Subgroup, base: Base, k: u32, spectrum: Option<&RSpectrum>) -> Result<DualCrapoRotaReport> {
    let n = h.n();
    let mut conv: Vec<BigInt> =
        Subset::all(n).map(|s| num_traits::pow(BigInt::from(aggregate_dimension(h, s)), k as usize)).collect();
    superset_mobius(&mut conv, n);
    let lhs = conv[0].clone();
    let lhs_spectrum = spectrum.map(|sp| spectrum_tuple_count(sp, k));
    let rhs = char_poly(&dual_table(h, base)?).eval_at_power(k as i64);
    Ok(DualCrapoRotaReport { k, lhs, lhs_spectrum, rhs })
}

/// `Σ Π mult·dim` over k-tuples of entries with `∩ triv = ∅`.
pub fn spectrum_tuple_count(sp: &RSpectrum, k: u32) -> BigInt {
    fn rec(entries: &[SpectrumEntry], running: Subset, left: u32, total: &BigInt) -> BigInt {
        if running.is_empty() {
            return num_traits::pow(total.clone(), left as usize);
        }
        if left == 0 {
            return BigInt::zero();
        }
        entries.iter().map(|e| BigInt::from(e.weight()) * rec(entries, running.intersection(e.triv), left - 1, total)).sum()
    }
    let total = BigInt::from(sp.total_dimension());
    rec(sp.entries(), Subset::full(sp.n()), k, &total)
}

/// `r_R(S) = log_b m` with `m = Σ mult·dim / Σ_{S ⊆ triv} mult·dim`.
pub fn rank_from_spectrum(sp: &RSpectrum, s: Subset) -> BigRational {
    let agg = sp.aggregate(s);
    assert!(agg > 0, "the trivial representation is missing from the spectrum");
    BigRational::new(BigInt::from(sp.total_dimension()), BigInt::from(agg))
}

/// The whole table `r_R` for base `b`.
pub fn spectrum_rank_table(sp: &RSpectrum, base: Base) -> Result<RankTable> {
    RankTable::from_fn(sp.n(), base, |s| rank_from_spectrum(sp, s))
}

/// `(1⊗1⊗ρ) ⊕ (1⊗1⊗1) ⊕ (ρ⊗1⊗1)` for a nontrivial linear character `ρ`
/// of `Γ`, whose rank function is not submodular.
#[derive(Clone, Debug)]
pub struct SubmodularityCounterexample {
    pub spectrum: RSpectrum,
    /// `m({1,2}), m({2,3}), m({1,2,3}), m({2})`.
    pub m12: BigRational,
    pub m23: BigRational,
    pub m123: BigRational,
    pub m2: BigRational,
}

impl SubmodularityCounterexample {
    /// `r({1,2}) + r({2,3}) < r({1,2,3}) + r({2})`.
    pub fn fails_submodularity(&self) -> bool {
        &self.m12 * &self.m23 < &self.m123 * &self.m2
    }
}

pub fn submodularity_counterexample_rr(table: &CharacterTable) -> Result<SubmodularityCounterexample> {
    let rho = (1..table.num_irreps())
        .find(|&i| table.dim(i) == 1)
        .ok_or_else(|| Error::Domain(format!("{} has no nontrivial linear character", table.group().label())))?;
    let entry = |irrep: Vec<usize>| {
        let triv = Subset::from_elements((0..3).filter(|&x| irrep[x] == 0));
        SpectrumEntry { irrep, dim: 1, triv, mult: 1 }
    };
    let labels: Vec<String> = (0..table.num_irreps()).map(|i| table.label(i).to_string()).collect();
    let spectrum = RSpectrum::from_entries(
        3,
        vec![entry(vec![0, 0, rho]), entry(vec![0, 0, 0]), entry(vec![rho, 0, 0])],
        vec![labels; 3],
    );
    let m = |v: &[usize]| rank_from_spectrum(&spectrum, Subset::from_elements(v.iter().copied()));
    Ok(SubmodularityCounterexample { m12: m(&[0, 1]), m23: m(&[1, 2]), m123: m(&[0, 1, 2]), m2: m(&[1]), spectrum })
}

/// For `H ≤ Γ^n` with `Γ` abelian: `H' = {m : Π χ_{m_x}(h_x) = 1 for all h}`,
/// using the canonical `χ_j ↦ j` identification of `Γ̂` with `Γ`.
pub fn abelian_dual_subgroup(h: &Subgroup) -> Result<Subgroup> {
    let g = h.parent();
    if !g.is_power() {
        return Err(Error::Capability("abelian duality needs all factors equal".into()));
    }
    let gamma = g.factor(0);
    let orders: Vec<usize> = match gamma.kind() {
        GroupKind::Cyclic(m) => vec![*m],
        GroupKind::Abelian(o) => o.clone(),
        _ if !gamma.is_abelian() => {
            return Err(Error::Capability(format!(
                "{} is nonabelian; duals of its realizations are not realizable in general (closure under duality holds only for abelian Γ)",
                gamma.label()
            )))
        }
        _ => {
            return Err(Error::Capability(format!(
                "no canonical dual identification for {}; use a cyclic or abelian:<orders> factor",
                gamma.label()
            )))
        }
    };
    let e = gamma.exponent();
    let digits = |mut a: usize| {
        let mut d = vec![0usize; orders.len()];
        for i in (0..orders.len()).rev() {
            d[i] = a % orders[i];
            a /= orders[i];
        }
        d
    };
    let table: Vec<Vec<usize>> = (0..gamma.order()).map(digits).collect();
    // pairing <j, k> as an exponent of ζ_e
    let pair = |j: usize, k: usize| -> usize {
        (0..orders.len()).map(|i| table[j][i] * table[k][i] * (e / orders[i])).sum::<usize>() % e
    };
    let gens: Vec<Tuple> = if h.generators().is_empty() { h.elements().to_vec() } else { h.generators().to_vec() };
    let all = g.elements(crate::groups::DEFAULT_CLOSURE_CAP as u128)?;
    let elements: Vec<Tuple> = all
        .into_iter()
        .filter(|m| gens.iter().all(|t| m.iter().zip(t).map(|(&a, &b)| pair(a as usize, b as usize)).sum::<usize>() % e == 0))
        .collect();
    Subgroup::from_elements(g.clone(), elements)
}

/// `R(H)` entries must all have triv sets that are flats of `P*`.
pub fn triv_sets_are_dual_flats(h: &Subgroup, sp: &RSpectrum) -> Result<bool> {
    let d = dual_table(h, Base::GroupOrder(2))?;
    let fl = crate::polymatroid::flats(&d);
    Ok(sp.entries().iter().all(|e| fl.contains(&e.triv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::One;

    fn labels(sp: &RSpectrum) -> Vec<String> {
        let mut v: Vec<String> = sp.entries().iter().map(|e| format!("{}x{}", sp.label(e), e.mult)).collect();
        v.sort();
        v
    }

    #[test]
    fn paper_spectra() {
        let h = fixtures::h_s3();
        let t = builtin_tables(h.parent()).unwrap();
        assert_eq!(labels(&r_spectrum(&h, &t).unwrap()), ["1⊗1x1", "s⊗sx1", "t⊗1x1", "t⊗sx1"]);
        let d = fixtures::diagonal_s3();
        assert_eq!(labels(&r_spectrum(&d, &t).unwrap()), ["1⊗1x1", "s⊗sx1", "t⊗tx1"]);
        let q = fixtures::equal_sign_s3();
        assert_eq!(labels(&r_spectrum(&q, &t).unwrap()), ["1⊗1x1", "s⊗sx1"]);
    }

    #[test]
    fn aggregate_routes_agree() {
        let h = fixtures::h_s3();
        assert_eq!(aggregate_dimension(&h, Subset::EMPTY), 6);
        assert_eq!(aggregate_dimension(&h, Subset::singleton(1)), 3);
        assert_eq!(aggregate_dimension(&h, Subset::full(2)), 1);
        let dist = exact_triv_distribution(&h);
        let want: Vec<BigInt> = [3, 0, 2, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(dist, want);
        let sp = r_spectrum(&h, &builtin_tables(h.parent()).unwrap()).unwrap();
        assert_eq!(sp.triv_distribution(), dist);
    }

    #[test]
    fn dual_crapo_rota_examples() {
        let h = fixtures::h_s3();
        let sp = r_spectrum(&h, &builtin_tables(h.parent()).unwrap()).unwrap();
        let r = dual_crapo_rota(&h, Base::GroupOrder(6), 2, Some(&sp)).unwrap();
        assert_eq!(r.lhs, BigInt::from(27));
        assert!(r.matches());
        let d = fixtures::diagonal_s3();
        let sp = r_spectrum(&d, &builtin_tables(d.parent()).unwrap()).unwrap();
        let r = dual_crapo_rota(&d, Base::GroupOrder(6), 1, Some(&sp)).unwrap();
        assert_eq!(r.lhs, BigInt::from(5));
        assert!(r.matches());
    }

    #[test]
    fn ranks_from_spectrum() {
        let h = fixtures::h_s3();
        let sp = r_spectrum(&h, &builtin_tables(h.parent()).unwrap()).unwrap();
        assert_eq!(rank_from_spectrum(&sp, Subset::EMPTY), BigRational::one());
        assert_eq!(rank_from_spectrum(&sp, Subset::singleton(0)), exact::int(6));
        assert_eq!(rank_from_spectrum(&sp, Subset::singleton(1)), exact::int(2));
        let dual = dual_table(&h, Base::GroupOrder(6)).unwrap();
        assert_eq!(spectrum_rank_table(&sp, Base::GroupOrder(6)).unwrap(), dual);
    }

    #[test]
    fn counterexample_shape() {
        for g in [crate::groups::FiniteGroup::cyclic(2).unwrap(), crate::groups::FiniteGroup::cyclic(3).unwrap()] {
            let c = submodularity_counterexample_rr(&CharacterTable::builtin(&g).unwrap()).unwrap();
            assert_eq!(&c.m12 * &c.m23, BigRational::new(9.into(), 4.into()));
            assert_eq!(&c.m123 * &c.m2, exact::int(3));
            assert!(c.fails_submodularity());
        }
    }

    #[test]
    fn abelian_duals() {
        let h = fixtures::chen();
        let hd = abelian_dual_subgroup(&h).unwrap();
        assert_eq!(h.order() * hd.order(), 216);
        assert_eq!(rank_table(&hd, Base::GroupOrder(6)).unwrap(), dual_table(&h, Base::GroupOrder(6)).unwrap());
        let b = fixtures::binary_row_space(&fixtures::BINARY_A);
        let bd = abelian_dual_subgroup(&b).unwrap();
        // orthogonal complement over GF(2)
        for u in b.elements() {
            for v in bd.elements() {
                assert_eq!(u.iter().zip(v).map(|(a, b)| a * b).sum::<u32>() % 2, 0);
            }
        }
        assert!(matches!(abelian_dual_subgroup(&fixtures::h_s3()), Err(Error::Capability(_))));
        let full = Subgroup::full(h.parent().clone(), 1000).unwrap();
        assert_eq!(abelian_dual_subgroup(&full).unwrap().order(), 1);
    }
}
