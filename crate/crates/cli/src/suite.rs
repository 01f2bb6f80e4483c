//! The bundled worked examples, each recomputed and compared with its
//! published value.

use grouppoly::codes::macwilliams_check;
use grouppoly::critical::{verify_crapo_rota, DEFAULT_ENUMERATION_BUDGET};
use grouppoly::fixtures;
use grouppoly::hypergraph::{coloring_report, star_graph, DEFAULT_BRUTE_BUDGET};
use grouppoly::laplacian::{build_quotient, laplacian_spectrum, top_betti, Augmentation};
use grouppoly::polymatroid::{
    a_dual, char_poly, flats, mobius_from, rank_table, rank_table_from_subset, submodularity_violations, AlphaVector,
    Base,
};
use grouppoly::reptheory::{builtin_tables, dual_crapo_rota, exact_triv_distribution, r_spectrum};
use grouppoly::{exact, linalg, Result, Subset};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::commands::Outcome;

struct Case {
    name: &'static str,
    expected: String,
    got: String,
}

fn cards(v: &[num_rational::BigRational]) -> String {
    v.iter().map(exact::fmt).collect::<Vec<_>>().join(", ")
}

fn set(v: &[usize]) -> Subset {
    Subset::from_elements(v.iter().copied())
}

fn sorted_labels(h: &grouppoly::groups::Subgroup) -> Result<String> {
    let sp = r_spectrum(h, &builtin_tables(h.parent())?)?;
    let mut labels: Vec<String> = sp.entries().iter().map(|e| sp.label(e)).collect();
    labels.sort();
    Ok(labels.join(" "))
}

fn cases() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    let mut push = |name, expected: &str, got: String| out.push(Case { name, expected: expected.to_string(), got });

    let h = fixtures::h_s3();
    let b6 = Base::GroupOrder(6);
    let p = rank_table(&h, b6.clone())?;
    push("H_s3 rank table |H_S|", "1, 2, 6, 6", cards(p.cards()));
    let d = a_dual(&p, &AlphaVector::factor_orders(h.parent()))?;
    push("H_s3 dual table", "1, 6, 2, 6", cards(d.cards()));
    let fl: Vec<String> = flats(&d).iter().map(Subset::to_string).collect();
    push("H_s3 dual flats", "{} {2} {1,2}", fl.join(" "));
    let mu = mobius_from(&d, Subset::EMPTY);
    let at = |s: Subset| mu.iter().find(|(f, _)| *f == s).map_or("-".to_string(), |(_, m)| m.to_string());
    push("H_s3 dual μ(∅,{2}), μ(∅,{1,2})", "-1, 0", format!("{}, {}", at(set(&[1])), at(set(&[0, 1]))));
    push("H_s3 χ_P*(t)", "t - t^{log_6 3}", char_poly(&d).to_string());
    let cr = verify_crapo_rota(&h, b6.clone(), 2, DEFAULT_ENUMERATION_BUDGET)?;
    push("H_s3 Crapo–Rota k=2", "27 = 27", format!("{} = {}", cr.lhs, exact::fmt(&cr.rhs)));
    let dcr = dual_crapo_rota(&h, b6, 2, None)?;
    push("H_s3 dual Crapo–Rota k=2", "27 = 27", format!("{} = {}", dcr.lhs, exact::fmt(&dcr.rhs)));

    push("R(diagonal S3)", "1⊗1 s⊗s t⊗t", sorted_labels(&fixtures::diagonal_s3())?);
    push("R(sign-matched S3²)", "1⊗1 s⊗s", sorted_labels(&fixtures::equal_sign_s3())?);
    push("R(H_s3)", "1⊗1 s⊗s t⊗1 t⊗s", sorted_labels(&h)?);

    let m = macwilliams_check(&h)?;
    let poly = |v: &[BigInt]| v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ");
    push("H_s3 MacWilliams both sides", "6 12 18 | 6 12 18", format!("{} | {}", poly(&m.lhs), poly(&m.rhs)));

    let l = rank_table_from_subset(&fixtures::example_l(), Base::GroupOrder(2))?;
    let v: Vec<String> = submodularity_violations(&l).iter().map(|(s, t)| format!("S={s} T={t}")).collect();
    push("raw subset submodularity failures", "S={1,2} T={2,3}", v.join("; "));

    let hg = fixtures::example_hypergraph();
    let sg = star_graph(&hg);
    push("hypergraph star-graph matrix size", "4x9", format!("{}x{}", sg.rows(), sg.cols()));
    let mut col = Vec::new();
    for lambda in 2..=6 {
        let r = coloring_report(&hg, lambda, DEFAULT_BRUTE_BUDGET)?;
        col.push(if r.matches() { "=".to_string() } else { format!("{}≠{}", r.brute, r.formula) });
    }
    push("hypergraph colorings vs λ^κ χ, λ=2..6", "= = = = =", col.join(" "));

    let chen = build_quotient(&fixtures::chen())?;
    let s = laplacian_spectrum(&chen, 0, Augmentation::Unaugmented)?;
    push("Chen Δ_0 char poly", "λ^3 - 12λ^2 + 33λ", linalg::format_poly(&s.char_poly, "λ"));

    let mut spectra = Vec::new();
    for rows in [fixtures::BINARY_A, fixtures::BINARY_B] {
        let c = build_quotient(&fixtures::binary_row_space(&rows))?;
        let sp = laplacian_spectrum(&c, 5, Augmentation::Augmented)?;
        spectra.push(sp.integer_roots.iter().map(|(r, m)| format!("{r}^{m}")).collect::<Vec<_>>().join(" "));
    }
    push("binary A, B Δ_5 spectra agree", &spectra[0], spectra[1].clone());

    let c = build_quotient(&h)?;
    push(
        "H_s3 β_top, triv(∅)",
        "3, 3",
        format!("{}, {}", top_betti(&c), exact_triv_distribution(&h)[0]),
    );
    Ok(out)
}

pub fn run() -> Result<Outcome> {
    let cases = cases()?;
    let width = cases.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    let mut text = String::new();
    let mut rows: Vec<Value> = Vec::new();
    let mut passed = 0;
    for c in &cases {
        let ok = c.expected == c.got;
        passed += ok as usize;
        let pad = width - c.name.chars().count();
        text += &format!("{} {}{}  {}", if ok { "PASS" } else { "FAIL" }, c.name, " ".repeat(pad), c.got);
        if !ok {
            text += &format!("  (expected {})", c.expected);
        }
        text.push('\n');
        rows.push(json!({"name": c.name, "expected": c.expected, "got": c.got, "pass": ok}));
    }
    text += &format!("{passed}/{} passed\n", cases.len());
    Ok(Outcome { text, result: json!({"cases": rows, "passed": passed, "total": cases.len()}), ok: passed == cases.len() })
}
