#![allow(dead_code)]

use grouppoly::groups::{subgroup_closure, FiniteGroup, GroupProduct, Subgroup, Tuple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_ORDER: u128 = 216;

pub fn factor_pool() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2).unwrap(),
        FiniteGroup::cyclic(3).unwrap(),
        FiniteGroup::cyclic(4).unwrap(),
        FiniteGroup::cyclic(6).unwrap(),
        FiniteGroup::symmetric(3).unwrap(),
        FiniteGroup::abelian(&[2, 2]).unwrap(),
    ]
}

/// A product from the pool with `|G| ≤ 216`; half the time a power `Γ^n`.
pub fn random_product<R: Rng>(rng: &mut R, pool: &[FiniteGroup]) -> GroupProduct {
    if rng.gen_bool(0.5) {
        let g = pool[rng.gen_range(0..pool.len())].clone();
        let mut max_n = 1;
        while (g.order() as u128).pow(max_n as u32 + 1) <= MAX_ORDER && max_n < 5 {
            max_n += 1;
        }
        let n = rng.gen_range(1..=max_n);
        GroupProduct::power(g, n).unwrap()
    } else {
        let mut factors: Vec<FiniteGroup> = Vec::new();
        let mut order = 1u128;
        loop {
            let g = &pool[rng.gen_range(0..pool.len())];
            if order * g.order() as u128 > MAX_ORDER || factors.len() == 4 {
                break;
            }
            order *= g.order() as u128;
            factors.push(g.clone());
            if factors.len() >= 2 && rng.gen_bool(0.3) {
                break;
            }
        }
        if factors.is_empty() {
            factors.push(pool[0].clone());
        }
        GroupProduct::new(factors).unwrap()
    }
}

pub fn random_element<R: Rng>(rng: &mut R, g: &GroupProduct) -> Tuple {
    g.factors().map(|f| rng.gen_range(0..f.order()) as u32).collect()
}

/// The closure of one to three random elements; occasionally trivial.
pub fn random_subgroup<R: Rng>(rng: &mut R, g: &GroupProduct) -> Subgroup {
    let k = if rng.gen_bool(0.05) { 0 } else { rng.gen_range(1..=3) };
    let gens: Vec<Tuple> = (0..k).map(|_| random_element(rng, g)).collect();
    subgroup_closure(g, &gens).unwrap()
}

pub fn random_subgroups(seed: u64, count: usize) -> Vec<Subgroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = factor_pool();
    (0..count)
        .map(|_| {
            let g = random_product(&mut rng, &pool);
            random_subgroup(&mut rng, &g)
        })
        .collect()
}

pub fn seeded_subgroup(seed: u64) -> Subgroup {
    random_subgroups(seed, 1).pop().unwrap()
}
