use std::collections::HashMap;

use crate::subset::Subset;

use super::RankTable;

/// `S` is a flat when adding any outside element raises the rank.
pub fn is_flat(p: &RankTable, s: Subset) -> bool {
    s.complement(p.n()).iter().all(|x| p.card(s.with(x)) > p.card(s))
}

/// All flats in colex order (which refines inclusion).
pub fn flats(p: &RankTable) -> Vec<Subset> {
    Subset::all(p.n()).filter(|&s| is_flat(p, s)).collect()
}

/// The smallest flat containing `s`.
pub fn closure(p: &RankTable, s: Subset) -> Subset {
    let c = p.card(s);
    s.union(Subset::from_elements(s.complement(p.n()).iter().filter(|&x| p.card(s.with(x)) == c)))
}

/// Flats covered by `E` in the lattice of flats.
pub fn coatoms(p: &RankTable) -> Vec<Subset> {
    let fl = flats(p);
    let top = p.ground();
    fl.iter()
        .copied()
        .filter(|&f| f != top && !fl.iter().any(|&g| g != top && g != f && f.is_subset_of(g)))
        .collect()
}

/// `μ(bottom, F)` for every flat `F ⊇ bottom`, in colex order of `F`.
pub fn mobius_from(p: &RankTable, bottom: Subset) -> Vec<(Subset, i64)> {
    let fl: Vec<Subset> = flats(p).into_iter().filter(|f| bottom.is_subset_of(*f)).collect();
    let n = p.n();
    let mut out: Vec<(Subset, i64)> = Vec::with_capacity(fl.len());
    let pairwise = (fl.len() as f64).powi(2) < 3f64.powi(n as i32);
    let mut at: HashMap<Subset, i64> = HashMap::new();
    for &g in &fl {
        let mu = if g == bottom {
            1
        } else if pairwise {
            -out.iter().filter(|(k, _)| k.is_subset_of(g)).map(|(_, m)| m).sum::<i64>()
        } else {
            -g.minus(bottom)
                .subsets()
                .filter(|&d| d != g.minus(bottom))
                .filter_map(|d| at.get(&d.union(bottom)))
                .sum::<i64>()
        };
        at.insert(g, mu);
        out.push((g, mu));
    }
    out
}

/// `μ(F, F')` for all pairs of flats `F ⊆ F'`.
pub fn mobius(p: &RankTable) -> Vec<(Subset, Subset, i64)> {
    let mut out = Vec::new();
    for f in flats(p) {
        for (g, mu) in mobius_from(p, f) {
            out.push((f, g, mu));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::polymatroid::{a_dual, rank_table, AlphaVector, Base};

    #[test]
    fn dual_hs3_lattice() {
        let p = rank_table(&fixtures::h_s3(), Base::GroupOrder(6)).unwrap();
        let d = a_dual(&p, &AlphaVector::uniform(2, 6)).unwrap();
        let fl = flats(&d);
        assert_eq!(fl, vec![Subset::EMPTY, Subset::singleton(1), Subset::full(2)]);
        let mu = mobius_from(&d, Subset::EMPTY);
        assert_eq!(mu, vec![(Subset::EMPTY, 1), (Subset::singleton(1), -1), (Subset::full(2), 0)]);
    }

    #[test]
    fn boolean_lattice() {
        let g = crate::groups::GroupProduct::power(crate::groups::FiniteGroup::cyclic(3).unwrap(), 4).unwrap();
        let full = crate::groups::Subgroup::full(g, 1000).unwrap();
        let p = rank_table(&full, Base::GroupOrder(3)).unwrap();
        assert_eq!(flats(&p).len(), 16);
        for (s, mu) in mobius_from(&p, Subset::EMPTY) {
            assert_eq!(mu, if s.len() % 2 == 0 { 1 } else { -1 });
        }
        assert_eq!(mobius(&p).len(), 81);
    }

    #[test]
    fn loops_block_empty_flat() {
        let g = crate::groups::GroupProduct::power(crate::groups::FiniteGroup::cyclic(2).unwrap(), 2).unwrap();
        let h = crate::groups::subgroup_closure(&g, &[vec![1, 0]]).unwrap();
        let p = rank_table(&h, Base::GroupOrder(2)).unwrap();
        assert!(!is_flat(&p, Subset::EMPTY));
        assert_eq!(closure(&p, Subset::EMPTY), Subset::singleton(1));
    }
}
