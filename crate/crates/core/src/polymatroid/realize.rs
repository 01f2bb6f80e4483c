use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{check_cap, Error, Result};
use crate::exact;
use crate::groups::{automorphisms, enumerate_subgroups_bounded, FiniteGroup, GroupProduct, Subgroup, Tuple};
use crate::subset::Subset;

use super::table::to_u64;
use super::{rank_table, Base, RankTable};

#[derive(Clone, Debug, PartialEq)]
pub struct GammaPossible {
    pub holds: bool,
    /// First failing set (or pair `S ⊆ T` for the stronger test).
    pub witness: Option<String>,
}

/// `card(S)` is an integer dividing `|Γ|^{|S|}` for every `S`. With
/// `strong`, also `card(T)/card(S)` is an integer dividing `|Γ|^{|T-S|}`
/// for all `S ⊆ T`.
pub fn gamma_possible(p: &RankTable, gamma: &FiniteGroup, strong: bool) -> Result<GammaPossible> {
    let q = gamma.order() as u64;
    if p.base().value() != exact::big(q) {
        return Err(Error::Domain(format!("base {} differs from |Γ| = {q}", p.base())));
    }
    let qb = BigInt::from(q);
    let divides = |v: &num_rational::BigRational, k: usize| {
        v.is_integer() && (num_traits::pow(qb.clone(), k) % v.numer()).is_zero()
    };
    for s in Subset::all(p.n()) {
        if !divides(p.card(s), s.len()) {
            return Ok(GammaPossible {
                holds: false,
                witness: Some(format!("|Γ|^r({s}) = {} does not divide {q}^{}", exact::fmt(p.card(s)), s.len())),
            });
        }
    }
    if strong {
        for t in Subset::all(p.n()) {
            for s in t.subsets() {
                let ratio = p.card(t) / p.card(s);
                if !divides(&ratio, t.minus(s).len()) {
                    return Ok(GammaPossible { holds: false, witness: Some(format!("S={s}, T={t}")) });
                }
            }
        }
    }
    Ok(GammaPossible { holds: true, witness: None })
}

/// A ground-set bijection `perm` with `card_q(perm(S)) = card_p(S)`.
pub fn isomorphism(p: &RankTable, q: &RankTable) -> Result<Option<Vec<usize>>> {
    if p.n() != q.n() || p.base() != q.base() {
        return Ok(None);
    }
    check_cap("ground set size for isomorphism search", p.n() as u128, 8)?;
    let n = p.n();
    let mut sorted_p: Vec<_> = p.cards().iter().zip(0u32..).map(|(c, s)| (Subset(s).len(), c.clone())).collect();
    let mut sorted_q: Vec<_> = q.cards().iter().zip(0u32..).map(|(c, s)| (Subset(s).len(), c.clone())).collect();
    sorted_p.sort();
    sorted_q.sort();
    if sorted_p != sorted_q {
        return Ok(None);
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(p: &RankTable, q: &RankTable, x: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = p.n();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] {
                continue;
            }
            perm[x] = y;
            // every subset whose largest element is x is now fully mapped
            let ok = Subset::full(x).subsets().all(|s| {
                let s = s.with(x);
                p.card(s) == q.card(Subset::from_elements(s.iter().map(|z| perm[z])))
            });
            if ok {
                used[y] = true;
                if rec(p, q, x + 1, perm, used) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
    Ok(rec(p, q, 0, &mut perm, &mut used).then_some(perm))
}

/// A map carrying one realization onto another: coordinate `x` is sent to
/// `coord_map[x]` after applying the automorphism `auts[x]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceWitness {
    pub coord_map: Vec<usize>,
    pub auts: Vec<Vec<u32>>,
}

impl EquivalenceWitness {
    pub fn apply(&self, t: &[u32]) -> Tuple {
        let mut out = vec![0u32; t.len()];
        for (x, &v) in t.iter().enumerate() {
            out[self.coord_map[x]] = self.auts[x][v as usize];
        }
        out
    }
}

/// Searches coordinate permutations and per-coordinate automorphisms for a
/// map carrying `h` onto `h2`. Both must be subgroups of the same `Γ^n`.
pub fn equivalent_realizations(h: &Subgroup, h2: &Subgroup, aut_cap: usize) -> Result<Option<EquivalenceWitness>> {
    let g = h.parent();
    if g != h2.parent() || !g.is_power() {
        return Err(Error::Domain("both subgroups must lie in the same power Γ^n".into()));
    }
    let n = g.n();
    check_cap("arity for equivalence search", n as u128, 5)?;
    if h.order() != h2.order() {
        return Ok(None);
    }
    let gamma = g.factor(0);
    let q = Base::GroupOrder(gamma.order() as u64);
    if isomorphism(&rank_table(h, q.clone())?, &rank_table(h2, q)?)?.is_none() {
        return Ok(None);
    }
    let auts = automorphisms(gamma, aut_cap)?;

    struct Search<'a> {
        h: &'a Subgroup,
        h2: &'a Subgroup,
        auts: &'a [Vec<u32>],
        source: Vec<usize>,
        aut_of: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn rec(&mut self, y: usize) -> bool {
            let n = self.h.n();
            if y == n {
                return true;
            }
            let target = crate::groups::project(self.h2, Subset::full(y + 1));
            for x in 0..n {
                if self.used[x] {
                    continue;
                }
                for a in 0..self.auts.len() {
                    self.source[y] = x;
                    self.aut_of[y] = a;
                    let mut img: Vec<Tuple> = self
                        .h
                        .elements()
                        .iter()
                        .map(|t| (0..=y).map(|z| self.auts[self.aut_of[z]][t[self.source[z]] as usize]).collect())
                        .collect();
                    img.sort_unstable();
                    img.dedup();
                    if img.as_slice() == target.elements() {
                        self.used[x] = true;
                        if self.rec(y + 1) {
                            return true;
                        }
                        self.used[x] = false;
                    }
                }
            }
            false
        }
    }
    let mut s = Search { h, h2, auts: &auts, source: vec![0; n], aut_of: vec![0; n], used: vec![false; n] };
    if !s.rec(0) {
        return Ok(None);
    }
    let mut coord_map = vec![0; n];
    let mut maps = vec![Vec::new(); n];
    for y in 0..n {
        coord_map[s.source[y]] = y;
        maps[s.source[y]] = auts[s.aut_of[y]].clone();
    }
    Ok(Some(EquivalenceWitness { coord_map, auts: maps }))
}

/// A subgroup of `Γ^n` realizing `P`, with `perm` sending `P`'s ground set
/// to the subgroup's coordinates.
#[derive(Clone, Debug)]
pub struct Representation {
    pub subgroup: Subgroup,
    pub perm: Vec<usize>,
}

/// Exhaustive search over the subgroups of `Γ^n` (`n = |E|`, at most `n_max`)
/// for one whose table is isomorphic to `P`.
pub fn representability_search(p: &RankTable, gamma: &FiniteGroup, n_max: usize, cap: u128) -> Result<Option<Representation>> {
    let q = gamma.order() as u64;
    if p.base().value() != exact::big(q) {
        return Err(Error::Domain(format!("base {} differs from |Γ| = {q}", p.base())));
    }
    let n = p.n();
    if n > n_max || n == 0 {
        return Ok(None);
    }
    let Some(target) = to_u64(p.card(p.ground())) else { return Ok(None) };
    let g = GroupProduct::power(gamma.clone(), n)?;
    check_cap("group order for representability search", g.order(), cap)?;
    let base = Base::GroupOrder(q);
    for h in enumerate_subgroups_bounded(&g, cap, Some(target as usize))? {
        if h.order() as u64 != target {
            continue;
        }
        let t = rank_table(&h, base.clone())?;
        if let Some(perm) = isomorphism(p, &t)? {
            return Ok(Some(Representation { subgroup: h, perm }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::{parse_tuple, subgroup_closure};

    #[test]
    fn subgroups_are_gamma_possible() {
        let h = fixtures::chen();
        let p = rank_table(&h, Base::GroupOrder(6)).unwrap();
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert!(gamma_possible(&p, &z6, false).unwrap().holds);
        assert!(gamma_possible(&p, &z6, true).unwrap().holds);
    }

    #[test]
    fn half_rank_polymatroid_is_gamma_possible_over_z4() {
        // r(S) = min(1, |S|/2) on three elements, base 4
        let p = RankTable::from_fn(3, Base::GroupOrder(4), |s| exact::int([1, 2, 4, 4][s.len()])).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert!(gamma_possible(&p, &z4, false).unwrap().holds);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let p3 = p.with_base(Base::GroupOrder(3));
        assert!(!gamma_possible(&p3, &z3, false).unwrap().holds);
    }

    #[test]
    fn equivalence_search() {
        let h = fixtures::h_s3();
        let w = equivalent_realizations(&h, &h, 24).unwrap().unwrap();
        assert_eq!(w.coord_map, vec![0, 1]);
        let g = fixtures::s3_squared();
        let swapped = subgroup_closure(&g, &[parse_tuple(&g, "(12),(12)").unwrap(), parse_tuple(&g, "(123),(1)").unwrap()]).unwrap();
        let w = equivalent_realizations(&h, &swapped, 24).unwrap().unwrap();
        assert_eq!(w.coord_map, vec![1, 0]);
        for t in h.elements() {
            assert!(swapped.contains(&w.apply(t)));
        }
        assert!(equivalent_realizations(&h, &fixtures::diagonal_s3(), 24).unwrap().is_none());
    }

    #[test]
    fn small_representability() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let u23 = RankTable::uniform(2, 3, 2).unwrap();
        let rep = representability_search(&u23, &z2, 3, 256).unwrap().unwrap();
        let t = rank_table(&rep.subgroup, Base::GroupOrder(2)).unwrap();
        assert!(isomorphism(&u23, &t).unwrap().is_some());
        let u11 = RankTable::uniform(1, 1, 6).unwrap();
        assert!(representability_search(&u11, &FiniteGroup::symmetric(3).unwrap(), 1, 256).unwrap().is_some());
        // U_{2,4} needs four distinct lines in a plane, impossible over GF(2)
        let u24 = RankTable::uniform(2, 4, 2).unwrap();
        assert!(representability_search(&u24, &z2, 4, 256).unwrap().is_none());
    }
}
