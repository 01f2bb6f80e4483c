//! Brute-force side of the critical theorem for group realizations: counting
//! k-tuples of subgroup elements with no common identity coordinate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{check_cap, Result};
use crate::exact;
use crate::groups::{GroupProduct, Subgroup, Tuple};
use crate::polymatroid::{char_poly, coatoms, flats, rank_table, Base};
use crate::subset::Subset;

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// `I(h) = {x : h_x = 1}`.
pub fn identity_support(h: &[u32], g: &GroupProduct) -> Subset {
    Subset::from_elements((0..g.n()).filter(|&x| g.is_identity_at(h, x)))
}

/// Number of `(h_1, .., h_k) ∈ H^k` with `∩ I(h_j) = ∅`, by enumeration.
pub fn crapo_rota_count(h: &Subgroup, k: u32, budget: u128) -> Result<u128> {
    let total = (h.order() as u128).checked_pow(k).unwrap_or(u128::MAX);
    check_cap("|H|^k for Crapo-Rota enumeration", total, budget)?;
    let supports: Vec<Subset> = h.elements().iter().map(|t| identity_support(t, h.parent())).collect();
    let size = h.order() as u128;
    fn rec(supports: &[Subset], running: Subset, left: u32, size: u128) -> u128 {
        if running.is_empty() {
            // every completion works
            return size.pow(left);
        }
        if left == 0 {
            return 0;
        }
        supports.iter().map(|&s| rec(supports, running.intersection(s), left - 1, size)).sum()
    }
    Ok(rec(&supports, Subset::full(h.n()), k, size))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrapoRotaReport {
    pub k: u32,
    pub lhs: BigInt,
    pub rhs: BigRational,
}

impl CrapoRotaReport {
    pub fn matches(&self) -> bool {
        self.rhs.is_integer() && self.rhs.numer() == &self.lhs
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "k": self.k,
            "lhs": exact::int_json(&self.lhs),
            "rhs_num": exact::int_json(self.rhs.numer()),
            "rhs_den": exact::int_json(self.rhs.denom()),
            "match": self.matches(),
        })
    }
}

/// Compares the enumeration with `χ_{P(H,b)}(b^k)`.
pub fn verify_crapo_rota(h: &Subgroup, base: Base, k: u32, budget: u128) -> Result<CrapoRotaReport> {
    let lhs = crapo_rota_count(h, k, budget)?;
    let p = rank_table(h, base)?;
    let rhs = char_poly(&p).eval_at_power(k as i64);
    Ok(CrapoRotaReport { k, lhs: BigInt::from(lhs), rhs })
}

/// Elements grouped by identity support.
pub fn support_counts(h: &Subgroup) -> BTreeMap<Subset, usize> {
    let mut m = BTreeMap::new();
    for t in h.elements() {
        *m.entry(identity_support(t, h.parent())).or_insert(0) += 1;
    }
    m
}

/// The first identity support that is not a flat, if any.
pub fn support_not_flat(h: &Subgroup) -> Result<Option<Subset>> {
    let p = rank_table(h, Base::GroupOrder(2))?;
    let fl = flats(&p);
    Ok(support_counts(h).into_keys().find(|s| !fl.contains(s)))
}

/// Coatoms of the flat lattice that are not the support of any element.
pub fn unrealized_coatoms(h: &Subgroup) -> Result<Vec<Subset>> {
    let p = rank_table(h, Base::GroupOrder(2))?;
    let supports = support_counts(h);
    Ok(coatoms(&p).into_iter().filter(|c| !supports.contains_key(c)).collect())
}

/// For a flat `S`, one element per `x ∉ S` that is the identity on `S` but
/// not at `x`; the supports of these intersect to `S`.
pub fn flat_witnesses(h: &Subgroup, s: Subset) -> Option<Vec<(usize, Tuple)>> {
    let g = h.parent();
    let mut out = Vec::new();
    for x in s.complement(h.n()).iter() {
        let w = h.elements().iter().find(|t| {
            let sup = identity_support(t, g);
            s.is_subset_of(sup) && !sup.contains(x)
        })?;
        out.push((x, w.clone()));
    }
    let meet = out.iter().fold(Subset::full(h.n()), |acc, (_, t)| acc.intersection(identity_support(t, g)));
    (meet == s).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::parse_tuple;

    #[test]
    fn supports() {
        let g = fixtures::s3_squared();
        assert_eq!(identity_support(&g.identity(), &g), Subset::full(2));
        assert_eq!(identity_support(&parse_tuple(&g, "(1),(123)").unwrap(), &g), Subset::singleton(0));
        assert_eq!(identity_support(&parse_tuple(&g, "(12),(13)").unwrap(), &g), Subset::EMPTY);
    }

    #[test]
    fn hs3_counts() {
        let h = fixtures::h_s3();
        assert_eq!(crapo_rota_count(&h, 1, DEFAULT_ENUMERATION_BUDGET).unwrap(), 3);
        assert_eq!(crapo_rota_count(&h, 2, DEFAULT_ENUMERATION_BUDGET).unwrap(), 27);
        for k in 1..=3 {
            let r = verify_crapo_rota(&h, Base::GroupOrder(6), k, DEFAULT_ENUMERATION_BUDGET).unwrap();
            assert!(r.matches(), "{r:?}");
        }
    }

    #[test]
    fn loop_gives_zero() {
        let g = crate::groups::GroupProduct::power(crate::groups::FiniteGroup::cyclic(3).unwrap(), 2).unwrap();
        let h = crate::groups::subgroup_closure(&g, &[vec![1, 0]]).unwrap();
        for k in 1..=3 {
            assert_eq!(crapo_rota_count(&h, k, DEFAULT_ENUMERATION_BUDGET).unwrap(), 0);
        }
        let triv = Subgroup::trivial(g);
        let r = verify_crapo_rota(&triv, Base::GroupOrder(3), 2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(r.lhs, BigInt::from(0));
        assert!(r.matches());
    }

    #[test]
    fn budget_is_enforced() {
        let h = fixtures::chen();
        assert!(crapo_rota_count(&h, 6, 1_000_000).is_err());
    }

    #[test]
    fn structure_of_supports() {
        for h in [fixtures::h_s3(), fixtures::diagonal_s3(), fixtures::chen(), fixtures::binary_row_space(&fixtures::BINARY_B)] {
            assert_eq!(support_not_flat(&h).unwrap(), None);
            assert!(unrealized_coatoms(&h).unwrap().is_empty());
            let p = rank_table(&h, Base::GroupOrder(2)).unwrap();
            for f in flats(&p) {
                let w = flat_witnesses(&h, f).expect("witnesses");
                assert!(w.len() <= h.n() - f.len());
            }
        }
    }
}
