mod common;

use grouppoly::codes::{dual_weight_enumerator, dual_weight_from_spectrum, macwilliams_check};
use grouppoly::critical::verify_crapo_rota;
use grouppoly::groups::{kernel_contract, project};
use grouppoly::hypergraph::{chromatic_value, count_colorings, random_hypergraph};
use grouppoly::laplacian::{build_quotient, euler_check};
use grouppoly::polymatroid::{
    a_dual, char_poly, char_poly_mobius, check_axioms, rank_table, tutte_recursion_sides, AlphaVector, Base,
};
use grouppoly::reptheory::{aggregate_dimension, builtin_tables, dual_crapo_rota, exact_triv_distribution, r_spectrum};
use grouppoly::Subset;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;

fn base_of(h: &grouppoly::groups::Subgroup) -> Base {
    Base::GroupOrder(h.parent().factors().map(|f| f.order() as u64).max().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn subgroup_tables_satisfy_axioms(seed in any::<u64>()) {
        let h = common::seeded_subgroup(seed);
        let p = rank_table(&h, base_of(&h)).unwrap();
        let r = check_axioms(&p);
        prop_assert!(r.is_polymatroid(), "{:?}", r);
        prop_assert!(r.p3_prime.holds);
        prop_assert!(r.subcardinal.holds);
    }

    #[test]
    fn char_poly_routes_agree(seed in any::<u64>()) {
        let h = common::seeded_subgroup(seed);
        let p = rank_table(&h, base_of(&h)).unwrap();
        prop_assert_eq!(char_poly(&p), char_poly_mobius(&p));
        let d = a_dual(&p, &AlphaVector::factor_orders(h.parent())).unwrap();
        prop_assert_eq!(char_poly(&d), char_poly_mobius(&d));
    }

    #[test]
    fn minors_are_realized(seed in any::<u64>(), pick in any::<u32>()) {
        let h = common::seeded_subgroup(seed);
        let n = h.n();
        let s = Subset(pick & ((1 << n) - 1));
        prop_assume!(s != Subset::full(n));
        let b = base_of(&h);
        let p = rank_table(&h, b.clone()).unwrap();
        let rest = s.complement(n);
        prop_assert_eq!(p.delete(s), rank_table(&project(&h, rest), b.clone()).unwrap());
        prop_assert_eq!(p.contract(s), rank_table(&kernel_contract(&h, s).unwrap(), b).unwrap());
        // (P \ S)* = P* / S and (P / S)* = P* \ S
        let a = AlphaVector::factor_orders(h.parent());
        let dual = a_dual(&p, &a).unwrap();
        let ar = a.restrict(rest);
        prop_assert_eq!(a_dual(&p.delete(s), &ar).unwrap(), dual.contract(s));
        prop_assert_eq!(a_dual(&p.contract(s), &ar).unwrap(), dual.delete(s));
        prop_assert_eq!(a_dual(&dual, &a).unwrap(), p);
    }

    #[test]
    fn tutte_recursion_holds(seed in any::<u64>(), alpha in -2i64..3, beta in -2i64..3) {
        let h = common::seeded_subgroup(seed);
        let p = rank_table(&h, base_of(&h)).unwrap();
        for x in 0..p.n() {
            let (lhs, rhs) = tutte_recursion_sides(&p, x, alpha, beta);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn spectrum_invariants(seed in any::<u64>()) {
        let h = common::seeded_subgroup(seed);
        let g = h.parent();
        let sp = r_spectrum(&h, &builtin_tables(g).unwrap()).unwrap();
        prop_assert_eq!(sp.total_dimension() as u128, g.order() / h.order() as u128);
        for s in Subset::all(h.n()) {
            prop_assert_eq!(sp.aggregate(s) as u128, aggregate_dimension(&h, s));
        }
        prop_assert_eq!(sp.triv_distribution(), exact_triv_distribution(&h));
        prop_assert_eq!(dual_weight_from_spectrum(&sp), dual_weight_enumerator(&h).unwrap());
        for k in 1..=2 {
            let r = dual_crapo_rota(&h, base_of(&h), k, Some(&sp)).unwrap();
            prop_assert!(r.matches(), "{:?}", r);
        }
    }

    #[test]
    fn critical_and_macwilliams(seed in any::<u64>()) {
        let h = common::seeded_subgroup(seed);
        let r = verify_crapo_rota(&h, base_of(&h), 1, 1_000_000).unwrap();
        prop_assert!(r.matches(), "{:?}", r);
        prop_assert!(macwilliams_check(&h).unwrap().matches());
    }

    #[test]
    fn quotient_complexes_are_chain_complexes(seed in any::<u64>()) {
        let h = common::seeded_subgroup(seed);
        prop_assume!(h.parent().order() <= 64);
        let c = build_quotient(&h).unwrap();
        prop_assert!(c.check_boundary_squares());
        prop_assert!(c.check_block_preservation());
        let e = euler_check(&c);
        prop_assert!(e.matches(), "{:?}", e);
    }

    #[test]
    fn hypergraph_colorings(seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, 5, 10);
        for l in 1..=3u64 {
            prop_assert_eq!(BigInt::from(count_colorings(&h, l).unwrap()), chromatic_value(&h, l).unwrap());
        }
    }
}
