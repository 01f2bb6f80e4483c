//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL` line. Run with `--nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use grouppoly::codes::{dual_greene_check, greene_check, macwilliams_check, FLOAT_REL_TOL};
use grouppoly::critical::verify_crapo_rota;
use grouppoly::exact;
use grouppoly::fixtures;
use grouppoly::groups::{enumerate_subgroups, parse_tuple, subgroup_closure, FiniteGroup, GroupProduct, Subgroup};
use grouppoly::hypergraph::{coloring_report, flow_report, random_hypergraph, DEFAULT_BRUTE_BUDGET};
use grouppoly::laplacian::{
    build_quotient, euler_check, laplacian_spectrum, predicted_top_spectrum, top_spectrum_hypothesis,
    verify_top_homology_on, Augmentation,
};
use grouppoly::polymatroid::{
    a_dual, char_poly, check_axioms, flats, isomorphism, mobius_from, rank_table, rank_table_from_subset,
    representability_search, submodularity_violations, AlphaVector, Base, RankTable,
};
use grouppoly::reptheory::{aggregate_dimension, builtin_tables, dual_crapo_rota, r_spectrum};
use grouppoly::Subset;
use num_bigint::BigInt;
use rand::SeedableRng;

const SWEEP_SEED: u64 = 2024;
const SWEEP_SIZE: usize = 100;
const GREENE_A: [i64; 4] = [-1, 0, 1, 2];
const GREENE_SAMPLES: usize = 20;

fn report(n: u32, ok: bool, detail: &str, elapsed: Duration, limit: Duration) {
    let timely = elapsed <= limit;
    let verdict = if ok && timely { "PASS" } else { "FAIL" };
    println!("criterion {n}: {verdict} ({detail}; {:.2}s of {}s)", elapsed.as_secs_f64(), limit.as_secs());
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(timely, "criterion {n} exceeded {}s", limit.as_secs());
}

fn set(v: &[usize]) -> Subset {
    Subset::from_elements(v.iter().copied())
}

fn sweep() -> Vec<Subgroup> {
    common::random_subgroups(SWEEP_SEED, SWEEP_SIZE)
}

fn base_of(h: &Subgroup) -> Base {
    Base::GroupOrder(h.parent().factors().map(|f| f.order() as u64).max().unwrap())
}

#[test]
fn criterion_1_example_s_s3() {
    let start = Instant::now();
    let h = fixtures::h_s3();
    let mut fails = Vec::new();
    let p = rank_table(&h, Base::GroupOrder(6)).unwrap();
    if p.cards() != [exact::int(1), exact::int(2), exact::int(6), exact::int(6)] {
        fails.push("rank table");
    }
    let d = a_dual(&p, &AlphaVector::factor_orders(h.parent())).unwrap();
    if d.cards() != [exact::int(1), exact::int(6), exact::int(2), exact::int(6)] {
        fails.push("dual ranks");
    }
    if flats(&d) != vec![Subset::EMPTY, set(&[1]), set(&[0, 1])] {
        fails.push("dual flats");
    }
    let mu = mobius_from(&d, Subset::EMPTY);
    if !mu.contains(&(set(&[1]), -1)) || !mu.contains(&(set(&[0, 1]), 0)) {
        fails.push("dual Möbius values");
    }
    let chi = char_poly(&d);
    let expected = vec![(BigInt::from(1), exact::int(6)), (BigInt::from(-1), exact::int(3))];
    if chi.terms() != expected.as_slice() {
        fails.push("χ_{P*}");
    }
    let sp = r_spectrum(&h, &builtin_tables(h.parent()).unwrap()).unwrap();
    let cr = dual_crapo_rota(&h, Base::GroupOrder(6), 2, Some(&sp)).unwrap();
    let both_27 = cr.lhs == BigInt::from(27) && cr.lhs_spectrum == Some(BigInt::from(27)) && cr.rhs == exact::int(27);
    if !both_27 {
        fails.push("dual Crapo–Rota k=2");
    }
    let detail = format!("χ_P* = {chi}, dual CR k=2: lhs {} rhs {}; failing: {:?}", cr.lhs, exact::fmt(&cr.rhs), fails);
    report(1, fails.is_empty(), &detail, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_2_crapo_rota_sweep() {
    let start = Instant::now();
    let subgroups = sweep();
    let mut bad = Vec::new();
    for (i, h) in subgroups.iter().enumerate() {
        for k in 1..=2 {
            let r = verify_crapo_rota(h, base_of(h), k, 100_000_000).unwrap();
            if !r.matches() {
                bad.push((i, k));
            }
        }
    }
    let detail = format!("{} subgroups × k∈{{1,2}}, mismatches {:?}", subgroups.len(), bad);
    report(2, subgroups.len() >= 100 && bad.is_empty(), &detail, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_3_spectra() {
    let start = Instant::now();
    let cases = [
        ("diagonal", fixtures::diagonal_s3(), vec!["1⊗1", "s⊗s", "t⊗t"]),
        ("sign-matched", fixtures::equal_sign_s3(), vec!["1⊗1", "s⊗s"]),
        ("H_s3", fixtures::h_s3(), vec!["1⊗1", "s⊗s", "t⊗1", "t⊗s"]),
    ];
    let mut fails = Vec::new();
    for (name, h, want) in &cases {
        let sp = r_spectrum(h, &builtin_tables(h.parent()).unwrap()).unwrap();
        let mut labels: Vec<String> = sp.entries().iter().map(|e| sp.label(e)).collect();
        labels.sort();
        let mut want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
        want.sort();
        if labels != want {
            fails.push(format!("{name}: {labels:?}"));
        }
        for s in Subset::all(h.n()) {
            if sp.aggregate(s) as u128 != aggregate_dimension(h, s) {
                fails.push(format!("{name}: aggregate at {s}"));
            }
        }
    }
    report(3, fails.is_empty(), &format!("3 spectra, failing {fails:?}"), start.elapsed(), Duration::from_secs(5));
}

#[test]
fn criterion_4_macwilliams() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let subgroups = sweep();
    for (i, h) in subgroups.iter().enumerate() {
        if !macwilliams_check(h).unwrap().matches() {
            bad.push(i);
        }
    }
    let m = macwilliams_check(&fixtures::h_s3()).unwrap();
    let want: Vec<BigInt> = [6, 12, 18].iter().map(|&v| BigInt::from(v)).collect();
    let hs3 = m.lhs == want && m.rhs == want;
    let detail = format!("{} subgroups, mismatches {bad:?}; H_s3 lhs {:?} rhs {:?}", subgroups.len(), m.lhs, m.rhs);
    report(4, bad.is_empty() && hs3, &detail, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_5_greene() {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut worst = 0f64;
    let mut cases: Vec<Subgroup> = sweep().into_iter().filter(|h| h.parent().is_power()).collect();
    cases.push(fixtures::h_s3());
    cases.push(fixtures::binary_row_space(&fixtures::BINARY_A));
    for (i, h) in cases.iter().enumerate() {
        for r in [
            greene_check(h, &GREENE_A, GREENE_SAMPLES, SWEEP_SEED + i as u64).unwrap(),
            dual_greene_check(h, &GREENE_A, GREENE_SAMPLES, SWEEP_SEED + i as u64).unwrap(),
        ] {
            worst = r.float.iter().map(|p| p.rel_err()).fold(worst, f64::max);
            if !r.matches() {
                bad.push((i, r.dual));
            }
        }
        checked += 1;
    }
    let detail = format!("{checked} power-product subgroups, worst rel err {worst:.2e} (tol {FLOAT_REL_TOL:e}), mismatches {bad:?}");
    report(5, bad.is_empty(), &detail, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_6_hypergraphs() {
    let start = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    let mut hs = vec![fixtures::example_hypergraph()];
    while hs.len() < 13 {
        let h = random_hypergraph(&mut rng, 7, 14);
        if h.edge_count() >= 2 {
            hs.push(h);
        }
    }
    let groups = [
        FiniteGroup::cyclic(2).unwrap(),
        FiniteGroup::cyclic(3).unwrap(),
        FiniteGroup::abelian(&[2, 2]).unwrap(),
        FiniteGroup::cyclic(6).unwrap(),
    ];
    let mut bad = Vec::new();
    let (mut colorings, mut flows, mut skipped) = (0, 0, 0);
    for (i, h) in hs.iter().enumerate() {
        for l in 2..=6 {
            let r = coloring_report(h, l, DEFAULT_BRUTE_BUDGET).unwrap();
            colorings += 1;
            if !r.matches() {
                bad.push(format!("H{i} λ={l}: {} vs {}", r.brute, r.formula));
            }
        }
        for g in &groups {
            match flow_report(h, g, DEFAULT_BRUTE_BUDGET) {
                Ok(r) => {
                    flows += 1;
                    if !r.matches() {
                        bad.push(format!("H{i} {}: {} vs {}", g.label(), r.brute, exact::fmt(&r.formula)));
                    }
                }
                Err(grouppoly::Error::Scale { .. }) => skipped += 1,
                Err(e) => panic!("{e}"),
            }
        }
    }
    let detail = format!("{} hypergraphs, {colorings} coloring and {flows} flow comparisons ({skipped} over budget), mismatches {bad:?}", hs.len());
    report(6, bad.is_empty(), &detail, start.elapsed(), Duration::from_secs(120));
}

fn laplacian_cases() -> Vec<(String, Subgroup)> {
    let mut out = vec![
        ("binary A".to_string(), fixtures::binary_row_space(&fixtures::BINARY_A)),
        ("binary B".to_string(), fixtures::binary_row_space(&fixtures::BINARY_B)),
        ("Chen".to_string(), fixtures::chen()),
        ("H_s3".to_string(), fixtures::h_s3()),
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    for (q, max_n) in [(2usize, 6usize), (6, 3)] {
        let mut found = 0;
        let mut tries = 0;
        while found < 6 && tries < 500 {
            tries += 1;
            let n = rand::Rng::gen_range(&mut rng, 2..=max_n);
            let g = GroupProduct::power(FiniteGroup::cyclic(q).unwrap(), n).unwrap();
            let h = common::random_subgroup(&mut rng, &g);
            if top_spectrum_hypothesis(&h) && g.order() / (h.order() as u128) <= 300 {
                out.push((format!("Z/{q}^{n} #{found}"), h));
                found += 1;
            }
        }
    }
    out
}

#[test]
fn criterion_7_laplacian() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let chen = build_quotient(&fixtures::chen()).unwrap();
    let s = laplacian_spectrum(&chen, 0, Augmentation::Unaugmented).unwrap();
    let want: Vec<BigInt> = [0, 33, -12, 1].iter().map(|&v| BigInt::from(v)).collect();
    if s.char_poly != want {
        fails.push(format!("Chen char poly {:?}", s.char_poly));
    }
    let mut binary = Vec::new();
    for rows in [fixtures::BINARY_A, fixtures::BINARY_B] {
        let c = build_quotient(&fixtures::binary_row_space(&rows)).unwrap();
        let sp = laplacian_spectrum(&c, 5, Augmentation::Augmented).unwrap();
        if !sp.splits() {
            fails.push("binary spectrum not integral".into());
        }
        binary.push(sp.integer_roots);
    }
    if binary[0] != binary[1] {
        fails.push(format!("binary spectra differ {binary:?}"));
    }
    let cases = laplacian_cases();
    let mut predicted = 0;
    for (name, h) in &cases {
        let c = build_quotient(h).unwrap();
        let top = h.n() as i64 - 1;
        if top_spectrum_hypothesis(h) {
            let pred: Vec<(i64, usize)> =
                predicted_top_spectrum(h).unwrap().into_iter().map(|(v, m)| (v, usize::try_from(m).unwrap())).collect();
            let got = laplacian_spectrum(&c, top, Augmentation::Augmented).unwrap();
            predicted += 1;
            if !got.splits() || got.integer_roots != pred {
                fails.push(format!("{name}: predicted {pred:?} computed {:?}", got.integer_roots));
            }
        }
        let t = verify_top_homology_on(h, &c).unwrap();
        let e = euler_check(&c);
        if BigInt::from(t.betti) != t.triv_empty || !e.matches() {
            fails.push(format!("{name}: β {} triv(∅) {} euler {:?}", t.betti, t.triv_empty, e));
        }
    }
    let detail = format!(
        "Chen Δ_0 {}, binary Δ_5 {:?}, {predicted} predicted spectra, {} Betti/Euler cases; failing {fails:?}",
        grouppoly::linalg::format_poly(&s.char_poly, "λ"),
        binary[0],
        cases.len()
    );
    report(7, fails.is_empty(), &detail, start.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_8_axioms() {
    let start = Instant::now();
    let mut tables: Vec<RankTable> = sweep().iter().map(|h| rank_table(h, base_of(h)).unwrap()).collect();
    for h in [fixtures::h_s3(), fixtures::chen(), fixtures::diagonal_s3(), fixtures::equal_sign_s3()] {
        tables.push(rank_table(&h, base_of(&h)).unwrap());
    }
    let bad: Vec<usize> = tables
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            let r = check_axioms(p);
            !(r.p1.holds && r.p2.holds && r.p3.holds && r.p3_prime.holds)
        })
        .map(|(i, _)| i)
        .collect();
    let l = rank_table_from_subset(&fixtures::example_l(), Base::GroupOrder(2)).unwrap();
    let v = submodularity_violations(&l);
    let exact_pair = v == vec![(set(&[0, 1]), set(&[1, 2]))];
    let detail = format!("{} subgroup tables, axiom failures {bad:?}; raw subset violations {:?}", tables.len(), v
        .iter()
        .map(|(s, t)| format!("S={s} T={t}"))
        .collect::<Vec<_>>());
    report(8, bad.is_empty() && exact_pair, &detail, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn criterion_9_excluded_minor() {
    let start = Instant::now();
    let mut notes = Vec::new();
    // abelian part: the criterion expects no realization of U_{2,3} inside Z/4^3
    let z4 = FiniteGroup::cyclic(4).unwrap();
    let u23_4 = RankTable::uniform(2, 3, 4).unwrap();
    let found = representability_search(&u23_4, &z4, 3, 1 << 20).unwrap();
    let abelian_ok = found.is_none();
    if let Some(r) = &found {
        let g = r.subgroup.parent();
        let gens: Vec<String> = r.subgroup.elements().iter().take(4).map(|t| g.format_tuple(t)).collect();
        notes.push(format!("Z/4^3 realizes U_{{2,3}} with |H| = {} (elements {} ...)", r.subgroup.order(), gens.join(" ")));
    }
    // nonabelian part, two coordinates: only S3^2 itself has full projections and full rank
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let g2 = GroupProduct::power(s3.clone(), 2).unwrap();
    let u22 = RankTable::uniform(2, 2, 6).unwrap();
    let all2 = enumerate_subgroups(&g2, 1 << 12).unwrap();
    let realizing: Vec<&Subgroup> =
        all2.iter().filter(|h| isomorphism(&u22, &rank_table(h, Base::GroupOrder(6)).unwrap()).unwrap().is_some()).collect();
    let two_ok = realizing.len() == 1 && realizing[0].order() == 36;
    notes.push(format!("{} subgroups of S3^2, {} realize U_{{2,2}}", all2.len(), realizing.len()));
    // nonabelian part, three coordinates: exhaustive search and the explicit contradiction
    let u23_6 = RankTable::uniform(2, 3, 6).unwrap();
    let three_ok = representability_search(&u23_6, &s3, 3, 1 << 20).unwrap().is_none();
    let g3 = GroupProduct::power(s3, 3).unwrap();
    let a = parse_tuple(&g3, "(1)|(13)|(12)").unwrap();
    let b = parse_tuple(&g3, "(23)|(1)|(123)").unwrap();
    let h = subgroup_closure(&g3, &[a.clone(), b.clone()]).unwrap();
    let ab = g3.mul(&a, &b);
    let ba = g3.mul(&b, &a);
    let contradiction = ab[..2] == ba[..2]
        && ab[2] != ba[2]
        && isomorphism(&u23_6, &rank_table(&h, Base::GroupOrder(6)).unwrap()).unwrap().is_none();
    notes.push(format!("S3^3: no realization {three_ok}, contradiction fixture {contradiction}"));
    let ok = abelian_ok && two_ok && three_ok && contradiction;
    report(9, ok, &notes.join("; "), start.elapsed(), Duration::from_secs(180));
}
