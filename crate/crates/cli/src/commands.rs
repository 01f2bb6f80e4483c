use std::fmt::Write as _;

use grouppoly::codes::{
    dual_greene_check, dual_weight_enumerator, greene_check, macwilliams_check, weight_enumerator, GreeneReport,
};
use grouppoly::critical::{verify_crapo_rota, DEFAULT_ENUMERATION_BUDGET};
use grouppoly::groups::parse_group_spec;
use grouppoly::hypergraph::{
    coloring_report, components, flow_report, hyper_polymatroid, star_graph, DEFAULT_BRUTE_BUDGET,
};
use grouppoly::laplacian::{
    build_quotient_capped, euler_check, laplacian_spectrum_capped, predicted_top_spectrum, top_spectrum_hypothesis,
    verify_top_homology_on, Augmentation, QuotientComplex, DEFAULT_FACE_CAP, DEFAULT_LAPLACIAN_CAP, DEFAULT_WORK_CAP,
};
use grouppoly::polymatroid::{
    a_dual, char_poly, char_poly_mobius, check_axioms, closure, mobius_from, submodularity_violations, tutte,
    AlphaVector, Base, RankTable,
};
use grouppoly::reptheory::{builtin_tables, dual_crapo_rota, r_spectrum, CharacterTable, RSpectrum};
use grouppoly::{exact, linalg, Error, Result, Subset};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::input::{self, Source};
use crate::Opts;

/// What a command prints, what goes into the JSON report, and whether
/// every check it ran held.
pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub ok: bool,
}

impl Outcome {
    fn info(text: String, result: Value) -> Outcome {
        Outcome { text, result, ok: true }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn rank_lines(p: &RankTable) -> String {
    let mut s = String::new();
    for t in Subset::all(p.n()) {
        let _ = writeln!(s, "{:<12} card {:<8} r = {}", t.to_string(), exact::fmt(p.card(t)), p.rank_string(t));
    }
    s
}

fn flat_lines(p: &RankTable) -> (String, Value) {
    let bottom = closure(p, Subset::EMPTY);
    let mu = mobius_from(p, bottom);
    let mut s = String::new();
    let mut rows = Vec::new();
    for (f, m) in &mu {
        let _ = writeln!(s, "{:<12} r = {:<12} μ = {m}", f.to_string(), p.rank_string(*f));
        rows.push(json!({"flat": f.bits(), "label": f.to_string(), "rank": p.rank_string(*f), "mu": m}));
    }
    (s, Value::Array(rows))
}

pub fn rank(opts: &Opts) -> Result<Outcome> {
    let (p, _) = input::table(opts)?;
    let text = format!("base b = {}\n{}", p.base(), rank_lines(&p));
    let ranks: Vec<String> = Subset::all(p.n()).map(|s| p.rank_string(s)).collect();
    Ok(Outcome::info(text, json!({"table": p.to_json(), "ranks": ranks})))
}

pub fn flats_cmd(opts: &Opts) -> Result<Outcome> {
    let (p, _) = input::table(opts)?;
    let (lines, rows) = flat_lines(&p);
    Ok(Outcome::info(format!("flats with μ(cl ∅, F):\n{lines}"), json!({"flats": rows})))
}

fn charpoly_report(p: &RankTable, opts: &Opts) -> Result<(String, Value, bool)> {
    let chi = char_poly(p);
    let agree = chi == char_poly_mobius(p);
    let mut text = format!("χ(t) = {chi}\nsubset sum and Möbius sum: {}\n", verdict(agree));
    let mut values = Vec::new();
    if let Some(k) = opts.k {
        let v = chi.eval_at_power(k as i64);
        let _ = writeln!(text, "χ(b^{k}) = {}", exact::fmt(&v));
        values.push(json!({"at": format!("b^{k}"), "value": exact::fmt(&v)}));
    }
    for &l in &opts.lambda {
        let v = grouppoly::hypergraph::char_poly_at_integer(p, &BigInt::from(l))?;
        let _ = writeln!(text, "χ({l}) = {v}");
        values.push(json!({"at": l, "value": exact::int_json(&v)}));
    }
    Ok((text, json!({"char_poly": chi.to_json(), "text": chi.to_string(), "routes_agree": agree, "values": values}), agree))
}

pub fn charpoly(opts: &Opts) -> Result<Outcome> {
    let (p, _) = input::table(opts)?;
    let (text, result, ok) = charpoly_report(&p, opts)?;
    Ok(Outcome { text, result, ok })
}

fn capacities(opts: &Opts, src: &Source, n: usize) -> Result<AlphaVector> {
    if !opts.a.is_empty() {
        let a = opts
            .a
            .iter()
            .map(|s| exact::parse(s).ok_or_else(|| Error::Parse(format!("bad capacity '{s}'"))))
            .collect::<Result<Vec<BigRational>>>()?;
        if a.len() != n {
            return Err(Error::Domain(format!("--a has {} entries, ground set has {n}", a.len())));
        }
        return AlphaVector::new(a);
    }
    match src {
        Source::Subgroup(h) => Ok(AlphaVector::factor_orders(h.parent())),
        Source::Raw(l) => Ok(AlphaVector::factor_orders(l.parent())),
        Source::Table => Err(Error::Domain("--a is required with --rank-table".into())),
    }
}

pub fn dual(opts: &Opts) -> Result<Outcome> {
    let (p, src) = input::table(opts)?;
    let a = capacities(opts, &src, p.n())?;
    let d = a_dual(&p, &a)?;
    let (flines, frows) = flat_lines(&d);
    let (ctext, cjson, ok) = charpoly_report(&d, opts)?;
    let text = format!("dual rank table (base {}):\n{}dual flats:\n{flines}{ctext}", d.base(), rank_lines(&d));
    Ok(Outcome { text, result: json!({"table": d.to_json(), "flats": frows, "char_poly": cjson}), ok })
}

fn exponent(m: &BigRational, b: &Base) -> String {
    match exact::exact_log(m, &b.value(), 128) {
        Some(k) => k.to_string(),
        None if m.numer() == m.denom() => "0".into(),
        None => format!("log_{b} {}", exact::fmt(m)),
    }
}

pub fn tutte_cmd(opts: &Opts) -> Result<Outcome> {
    let (p, _) = input::table(opts)?;
    let t = tutte(&p);
    let mut text = String::from("T(u,v) =\n");
    for (c, m1, m2) in t.terms() {
        let _ = writeln!(text, "  {c:>4} (u-1)^{{{}}} (v-1)^{{{}}}", exponent(m1, t.base()), exponent(m2, t.base()));
    }
    let mut value = Value::Null;
    if opts.alpha.is_some() || opts.beta.is_some() {
        let (al, be) = (opts.alpha.unwrap_or(0), opts.beta.unwrap_or(0));
        let v = t.eval_exact(al, be);
        let _ = writeln!(text, "T at u-1 = b^{al}, v-1 = b^{be}: {}", exact::fmt(&v));
        value = json!({"alpha": al, "beta": be, "value": exact::fmt(&v)});
    }
    Ok(Outcome::info(text, json!({"base": t.base().to_json(), "terms": t.to_json(), "value": value})))
}

fn need_subgroup(opts: &Opts) -> Result<grouppoly::groups::Subgroup> {
    if opts.rank_table.is_some() || opts.elems.is_some() {
        return Err(Error::Domain("this command needs a subgroup (--group and --gens)".into()));
    }
    input::subgroup(opts)
}

pub fn weights(opts: &Opts) -> Result<Outcome> {
    let h = need_subgroup(opts)?;
    let w = weight_enumerator(&h)?;
    let wd = dual_weight_enumerator(&h)?;
    let m = macwilliams_check(&h)?;
    let text = format!(
        "W_H(t)    = {w}\nW_R(H)(t) = {wd}\nMacWilliams (cleared): {}\n",
        verdict(m.matches())
    );
    Ok(Outcome { text, result: json!({"w": w.to_json(), "w_dual": wd.to_json(), "macwilliams": m.to_json()}), ok: m.matches() })
}

fn tables_for(opts: &Opts, h: &grouppoly::groups::Subgroup) -> Result<Vec<CharacterTable>> {
    match &opts.tables {
        None => builtin_tables(h.parent()),
        Some(path) => {
            let text = input::read(path)?;
            h.parent().factors().map(|f| CharacterTable::parse(f, &text)).collect()
        }
    }
}

fn spectrum(opts: &Opts, h: &grouppoly::groups::Subgroup) -> Result<RSpectrum> {
    r_spectrum(h, &tables_for(opts, h)?)
}

pub fn rep_spectrum(opts: &Opts) -> Result<Outcome> {
    let h = need_subgroup(opts)?;
    let sp = spectrum(opts, &h)?;
    let mut text = String::from("irreducible        dim  mult  triv\n");
    for e in sp.entries() {
        let _ = writeln!(text, "{:<18} {:>3} {:>5}  {}", sp.label(e), e.dim, e.mult, e.triv);
    }
    let _ = writeln!(text, "total dimension {} = [G:H]", sp.total_dimension());
    Ok(Outcome::info(text, sp.to_json()))
}

fn ks(opts: &Opts) -> Vec<u32> {
    opts.k.map_or(vec![1, 2], |k| vec![k])
}

pub fn verify_crapo_rota_cmd(opts: &Opts) -> Result<Outcome> {
    let h = need_subgroup(opts)?;
    let b = input::base(opts, Some(h.parent()))?;
    let budget = opts.cap.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for k in ks(opts) {
        let r = verify_crapo_rota(&h, b.clone(), k, budget)?;
        let _ = writeln!(text, "k={k}: lhs {}, rhs {} {}", r.lhs, exact::fmt(&r.rhs), verdict(r.matches()));
        ok &= r.matches();
        rows.push(r.to_json());
    }
    Ok(Outcome { text, result: Value::Array(rows), ok })
}

pub fn verify_dual_crapo_rota(opts: &Opts) -> Result<Outcome> {
    let h = need_subgroup(opts)?;
    let b = input::base(opts, Some(h.parent()))?;
    let sp = spectrum(opts, &h)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for k in ks(opts) {
        let r = dual_crapo_rota(&h, b.clone(), k, Some(&sp))?;
        let spec = r.lhs_spectrum.as_ref().map_or("-".to_string(), BigInt::to_string);
        let _ = writeln!(
            text,
            "k={k}: lhs {} (from R(H): {spec}), rhs {} {}",
            r.lhs,
            exact::fmt(&r.rhs),
            verdict(r.matches())
        );
        ok &= r.matches();
        rows.push(r.to_json());
    }
    Ok(Outcome { text, result: Value::Array(rows), ok })
}

fn greene_text(r: &GreeneReport) -> String {
    let mut s = String::new();
    for p in &r.exact {
        let _ = writeln!(s, "a={:>2} t={:<10} lhs {} rhs {} {}", p.a, exact::fmt(&p.t), exact::fmt(&p.lhs), exact::fmt(&p.rhs), verdict(p.lhs == p.rhs));
    }
    let worst = r.float.iter().map(|p| p.rel_err()).fold(0f64, f64::max);
    let _ = writeln!(s, "{} float samples, worst relative error {worst:.2e}", r.float.len());
    let _ = writeln!(s, "{}", verdict(r.matches()));
    s
}

pub fn verify_greene(opts: &Opts, dual: bool) -> Result<Outcome> {
    let h = need_subgroup(opts)?;
    let a: Vec<i64> = if opts.a.is_empty() {
        vec![-1, 0, 1, 2]
    } else {
        opts.a.iter().map(|s| s.parse().map_err(|_| Error::Parse(format!("bad integer a '{s}'")))).collect::<Result<_>>()?
    };
    let r = if dual {
        dual_greene_check(&h, &a, opts.samples, opts.seed)?
    } else {
        greene_check(&h, &a, opts.samples, opts.seed)?
    };
    Ok(Outcome { text: greene_text(&r), result: r.to_json(), ok: r.matches() })
}

pub fn verify_macwilliams(opts: &Opts) -> Result<Outcome> {
    let h = need_subgroup(opts)?;
    let m = macwilliams_check(&h)?;
    let fmt = |v: &[BigInt]| v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", ");
    let mut text = format!("|H|·W_R(H): [{}]\ntransform:  [{}]\n", fmt(&m.lhs), fmt(&m.rhs));
    let _ = writeln!(text, "double transform: {}", verdict(m.double_lhs == m.double_rhs));
    let _ = writeln!(text, "{}", verdict(m.matches()));
    Ok(Outcome { text, result: m.to_json(), ok: m.matches() })
}

pub fn verify_axioms(opts: &Opts) -> Result<Outcome> {
    let (p, _) = input::table(opts)?;
    let r = check_axioms(&p);
    let mut text = String::new();
    for (name, c) in [
        ("P1", &r.p1),
        ("P2", &r.p2),
        ("P3", &r.p3),
        ("P3'", &r.p3_prime),
        ("subcardinal", &r.subcardinal),
        ("integer-valued", &r.integer_valued),
    ] {
        let _ = writeln!(text, "{name:<15} {}{}", if c.holds { "holds" } else { "fails" }, c.witness.as_ref().map_or(String::new(), |w| format!(": {w}")));
    }
    let v = submodularity_violations(&p);
    for (s, t) in &v {
        let _ = writeln!(text, "submodularity fails at S={s} T={t}");
    }
    let _ = writeln!(text, "polymatroid: {}, matroid: {}", r.is_polymatroid(), r.is_matroid());
    let mut result = r.to_json();
    result["violations"] = v.iter().map(|(s, t)| json!([s.bits(), t.bits()])).collect();
    Ok(Outcome { text, result, ok: r.is_polymatroid() })
}

pub fn hyper_chromatic(opts: &Opts) -> Result<Outcome> {
    let h = input::hypergraph(opts)?;
    let budget = opts.cap.unwrap_or(DEFAULT_BRUTE_BUDGET);
    let sg = star_graph(&h);
    let p = hyper_polymatroid(&h, 2)?;
    let chi = char_poly(&p);
    let mut text = format!("κ = {}\nχ_P(H)(t) = {chi} (base 2)\n", sg.components);
    let lambdas = if opts.lambda.is_empty() { (2..=6).collect() } else { opts.lambda.clone() };
    let mut rows = Vec::new();
    let mut ok = true;
    for l in lambdas {
        let r = coloring_report(&h, l, budget)?;
        let _ = writeln!(text, "λ={l}: brute {} formula {} {}", r.brute, r.formula, verdict(r.matches()));
        ok &= r.matches();
        rows.push(r.to_json());
    }
    let result = json!({"components": components(&h), "star_graph": sg.to_json(), "char_poly": chi.to_json(), "colorings": rows});
    Ok(Outcome { text, result, ok })
}

pub fn hyper_flow(opts: &Opts) -> Result<Outcome> {
    let h = input::hypergraph(opts)?;
    let spec = opts.group.as_deref().ok_or_else(|| Error::Domain("--group is required".into()))?;
    let budget = opts.cap.unwrap_or(DEFAULT_BRUTE_BUDGET);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let g = parse_group_spec(part)?;
        let r = flow_report(&h, &g, budget)?;
        let _ = writeln!(text, "{}: brute {} formula {} {}", r.group, r.brute, exact::fmt(&r.formula), verdict(r.matches()));
        ok &= r.matches();
        rows.push(r.to_json());
    }
    Ok(Outcome { text, result: Value::Array(rows), ok })
}

fn complex(opts: &Opts) -> Result<(grouppoly::groups::Subgroup, QuotientComplex)> {
    let h = need_subgroup(opts)?;
    let cap = opts.cap.unwrap_or(DEFAULT_FACE_CAP);
    let c = build_quotient_capped(&h, cap, DEFAULT_WORK_CAP.max(cap))?;
    Ok((h, c))
}

/// Unaugmented below the top dimension, augmented at it, unless overridden.
fn augmentation(opts: &Opts, dim: i64, top: i64) -> Augmentation {
    if opts.augmented {
        Augmentation::Augmented
    } else if opts.unaugmented || dim < top {
        Augmentation::Unaugmented
    } else {
        Augmentation::Augmented
    }
}

pub fn laplacian_spectrum_cmd(opts: &Opts) -> Result<Outcome> {
    let (h, c) = complex(opts)?;
    let top = c.n() as i64 - 1;
    let dim = opts.dim.unwrap_or(top);
    let aug = augmentation(opts, dim, top);
    let cap = opts.cap.map_or(DEFAULT_LAPLACIAN_CAP, |c| c.min(usize::MAX as u128) as usize);
    let sp = laplacian_spectrum_capped(&c, dim, aug, cap)?;
    let roots: Vec<String> = sp.integer_roots.iter().map(|(r, m)| format!("{r}^{m}")).collect();
    let mut text = format!(
        "Δ_{dim} ({}), {} faces\nchar poly: {}\ninteger eigenvalues: {}\n",
        if aug == Augmentation::Augmented { "augmented" } else { "unaugmented" },
        c.face_count(dim),
        linalg::format_poly(&sp.char_poly, "λ"),
        if roots.is_empty() { "none".into() } else { roots.join(" ") }
    );
    if !sp.splits() {
        let _ = writeln!(text, "irreducible remainder: {}", linalg::format_poly(&sp.residual, "λ"));
    }
    let _ = writeln!(text, "positive semidefinite: {}", sp.psd);
    let mut result = sp.to_json();
    let mut ok = sp.psd;
    if dim == top && aug == Augmentation::Augmented && top_spectrum_hypothesis(&h) {
        let pred = predicted_top_spectrum(&h)?;
        let want: Vec<(i64, usize)> = pred.iter().map(|(v, m)| (*v, usize::try_from(m).unwrap_or(usize::MAX))).collect();
        let matches = sp.splits() && sp.integer_roots == want;
        let shown: Vec<String> = pred.iter().map(|(v, m)| format!("{v}^{m}")).collect();
        let _ = writeln!(text, "predicted from ranks: {} {}", shown.join(" "), verdict(matches));
        result["predicted"] = pred.iter().map(|(v, m)| json!([v, exact::int_json(m)])).collect();
        result["predicted_match"] = json!(matches);
        ok &= matches;
    }
    Ok(Outcome { text, result, ok })
}

pub fn laplacian_betti(opts: &Opts) -> Result<Outcome> {
    let (h, c) = complex(opts)?;
    let aug = if opts.unaugmented { Augmentation::Unaugmented } else { Augmentation::Augmented };
    let betti = c.betti(aug);
    let t = verify_top_homology_on(&h, &c)?;
    let mut text = format!(
        "{} Betti numbers: {betti:?}\nβ_top = {}, triv-distribution at ∅ = {}",
        if aug == Augmentation::Augmented { "reduced" } else { "unreduced" },
        t.betti,
        t.triv_empty
    );
    if let Some(cd) = &t.chi_dual {
        let _ = write!(text, ", χ_P*(|Γ|) = {}", exact::fmt(cd));
    }
    let _ = writeln!(text, " {}", verdict(t.matches()));
    if let Some(note) = &t.note {
        let _ = writeln!(text, "note: {note}");
    }
    Ok(Outcome { text, result: json!({"betti": betti, "augmented": aug == Augmentation::Augmented, "top": t.to_json()}), ok: t.matches() })
}

pub fn laplacian_euler(opts: &Opts) -> Result<Outcome> {
    let (_, c) = complex(opts)?;
    let e = euler_check(&c);
    let text = format!(
        "alternating coset sum {}, (-1)^(n-1) β_(n-1) = {}, lower reduced Betti {:?} {}\n",
        e.alternating_sum,
        e.signed_top_betti,
        e.lower_betti,
        verdict(e.matches())
    );
    Ok(Outcome { text, result: e.to_json(), ok: e.matches() })
}

pub fn laplacian_dump(opts: &Opts) -> Result<Outcome> {
    let (_, c) = complex(opts)?;
    let dump = c.to_json();
    let text = serde_json::to_string_pretty(&dump).unwrap_or_default() + "\n";
    Ok(Outcome::info(text, dump))
}
