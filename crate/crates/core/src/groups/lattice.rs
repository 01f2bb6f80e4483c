use std::collections::HashSet;

use crate::error::{check_cap, Error, Result};

use super::{FiniteGroup, GroupProduct, Subgroup};

pub const DEFAULT_AUT_CAP: usize = 24;
pub const DEFAULT_SUBGROUP_CAP: u128 = 256;

/// All automorphisms of `g`, each as the image of every element index.
pub fn automorphisms(g: &FiniteGroup, cap: usize) -> Result<Vec<Vec<u32>>> {
    check_cap("group order for automorphism search", g.order() as u128, cap as u128)?;
    let n = g.order();
    // greedy generating set
    let mut gens = Vec::new();
    let mut span = vec![false; n];
    span[g.identity()] = true;
    for x in 0..n {
        if !span[x] {
            gens.push(x);
            span = closure_flags(g, &gens);
        }
    }
    let orders: Vec<usize> = (0..n).map(|x| g.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens.iter().map(|&x| (0..n).filter(|&y| orders[y] == orders[x]).collect()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_homomorphism(g, &gens, &images) {
            out.push(map);
        }
        // odometer over candidate images
        let mut i = 0;
        loop {
            if i == gens.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn closure_flags(g: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head];
        head += 1;
        for &s in gens {
            let c = g.mul(a, s);
            if !seen[c] {
                seen[c] = true;
                queue.push(c);
            }
        }
    }
    seen
}

fn extend_homomorphism(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
    let n = g.order();
    let mut map = vec![u32::MAX; n];
    map[g.identity()] = g.identity() as u32;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let c = g.mul(a, s);
            let img = g.mul(map[a] as usize, t) as u32;
            if map[c] == u32::MAX {
                map[c] = img;
                queue.push(c);
            } else if map[c] != img {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &m in &map {
        if m == u32::MAX || hit[m as usize] {
            return None;
        }
        hit[m as usize] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] as usize != g.mul(map[a] as usize, map[b] as usize) {
                return None;
            }
        }
    }
    Some(map)
}

/// Dense multiplication table over element codes of a product.
struct Dense {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
}

impl Dense {
    fn of(g: &GroupProduct) -> Dense {
        let order = g.order() as usize;
        let elems: Vec<_> = (0..order as u64).map(|c| g.decode(c)).collect();
        let mut mul = Vec::with_capacity(order * order);
        for a in &elems {
            for b in &elems {
                mul.push(g.encode(&g.mul(a, b)) as u32);
            }
        }
        Dense { order, mul, identity: g.encode(&g.identity()) as usize }
    }

    fn words(&self) -> usize {
        self.order.div_ceil(64)
    }

    /// Closure of a subgroup (bitset, elements) under its generators plus
    /// `gens`; `None` once it grows past `limit`.
    fn join(&self, base: &[u64], base_elems: &[u32], gens: &[u32], limit: usize) -> Option<(Vec<u64>, Vec<u32>)> {
        let mut bits = base.to_vec();
        let mut elems = base_elems.to_vec();
        let mut head = 0;
        while head < elems.len() {
            let a = elems[head] as usize;
            head += 1;
            for &s in gens {
                let c = self.mul[a * self.order + s as usize];
                let (w, b) = (c as usize / 64, c % 64);
                if bits[w] >> b & 1 == 0 {
                    bits[w] |= 1 << b;
                    elems.push(c);
                    if elems.len() > limit {
                        return None;
                    }
                }
            }
        }
        Some((bits, elems))
    }
}

/// All subgroups of `g` (cyclic subgroups, then joins until fixpoint),
/// sorted by order and then by element list.
pub fn enumerate_subgroups(g: &GroupProduct, cap: u128) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_bounded(g, cap, None)
}

/// As [`enumerate_subgroups`], keeping only subgroups of order at most
/// `max_order`. Joins only grow, so larger ones are never expanded.
pub fn enumerate_subgroups_bounded(g: &GroupProduct, cap: u128, max_order: Option<usize>) -> Result<Vec<Subgroup>> {
    check_cap("group order for subgroup enumeration", g.order(), cap)?;
    if g.order() > u32::MAX as u128 {
        return Err(Error::scale("group order", g.order(), u32::MAX as u128));
    }
    let d = Dense::of(g);
    let limit = max_order.unwrap_or(d.order);
    let mut trivial_bits = vec![0u64; d.words()];
    trivial_bits[d.identity / 64] |= 1 << (d.identity % 64);
    let trivial = (trivial_bits.clone(), vec![d.identity as u32]);

    // entries are (bitset, elements, generators)
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut all: Vec<(Vec<u64>, Vec<u32>, Vec<u32>)> = Vec::new();
    seen.insert(trivial.0.clone());
    all.push((trivial.0.clone(), trivial.1.clone(), Vec::new()));
    let mut cyclic: Vec<(Vec<u64>, u32)> = Vec::new();
    for x in 0..d.order as u32 {
        if let Some((bits, elems)) = d.join(&trivial.0, &trivial.1, &[x], limit) {
            if seen.insert(bits.clone()) {
                cyclic.push((bits.clone(), x));
                all.push((bits, elems, vec![x]));
            }
        }
    }
    let mut frontier: Vec<usize> = (1..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for (cbits, x) in &cyclic {
                let (hb, he, hg) = &all[i];
                if cbits.iter().zip(hb).all(|(c, h)| c & !h == 0) {
                    continue;
                }
                let mut gens = hg.clone();
                gens.push(*x);
                if let Some((bits, elems)) = d.join(hb, he, &gens, limit) {
                    if seen.insert(bits.clone()) {
                        all.push((bits, elems, gens));
                        next.push(all.len() - 1);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = all
        .into_iter()
        .map(|(_, elems, _)| {
            let mut tuples: Vec<_> = elems.iter().map(|&c| g.decode(c as u64)).collect();
            tuples.sort_unstable();
            Subgroup::from_sorted_unchecked(g.clone(), tuples)
        })
        .collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    Ok(out)
}
