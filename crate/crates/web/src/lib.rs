//! wasm-bindgen entry points for the static demo page in `www/`.
//! Each returns a JSON string; errors surface as JS exceptions.

use grouppoly::codes::{dual_weight_enumerator, weight_enumerator};
use grouppoly::groups::{parse_group_spec, parse_product_spec, read_generators, subgroup_closure_capped, Subgroup};
use grouppoly::hypergraph::{coloring_report, components, flow_report, Hypergraph};
use grouppoly::laplacian::{build_quotient_capped, laplacian_spectrum_capped, Augmentation};
use grouppoly::polymatroid::{a_dual, char_poly, flats, rank_table, AlphaVector, Base};
use grouppoly::reptheory::{builtin_tables, r_spectrum};
use grouppoly::{exact, linalg, Subset};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Smaller than the library defaults so the page stays responsive.
const CLOSURE_CAP: usize = 50_000;
const FACE_CAP: u128 = 20_000;
const WORK_CAP: u128 = 2_000_000;
const LAPLACIAN_CAP: usize = 120;
const BRUTE_BUDGET: u128 = 5_000_000;

fn subgroup(group: &str, gens: &str) -> grouppoly::Result<Subgroup> {
    let g = parse_product_spec(group, None)?;
    let gens = read_generators(&g, gens)?;
    subgroup_closure_capped(&g, &gens, CLOSURE_CAP)
}

fn base(h: &Subgroup) -> Base {
    let g = h.parent();
    let q = g.factor(0).order();
    if g.factors().all(|f| f.order() == q) {
        Base::GroupOrder(q as u64)
    } else {
        Base::GroupOrder(g.order() as u64)
    }
}

/// Rank table, flats, both characteristic polynomials, weight enumerators
/// and, when character tables are built in, the spectrum `R(H)`.
pub fn analyze(group: &str, gens: &str) -> grouppoly::Result<Value> {
    let h = subgroup(group, gens)?;
    let p = rank_table(&h, base(&h))?;
    let d = a_dual(&p, &AlphaVector::factor_orders(h.parent()))?;
    let rows: Vec<Value> = Subset::all(h.n())
        .map(|s| json!({"set": s.to_string(), "card": exact::fmt(p.card(s)), "rank": p.rank_string(s), "dual_rank": d.rank_string(s)}))
        .collect();
    let spectrum = builtin_tables(h.parent()).and_then(|t| r_spectrum(&h, &t)).map_or(Value::Null, |sp| {
        sp.entries()
            .iter()
            .map(|e| json!({"label": sp.label(e), "dim": e.dim, "mult": e.mult, "triv": e.triv.to_string()}))
            .collect()
    });
    Ok(json!({
        "order": h.order(),
        "base": p.base().to_string(),
        "ranks": rows,
        "flats": flats(&p).iter().map(Subset::to_string).collect::<Vec<_>>(),
        "dual_flats": flats(&d).iter().map(Subset::to_string).collect::<Vec<_>>(),
        "char_poly": char_poly(&p).to_string(),
        "dual_char_poly": char_poly(&d).to_string(),
        "weights": weight_enumerator(&h)?.to_string(),
        "dual_weights": dual_weight_enumerator(&h)?.to_string(),
        "spectrum": spectrum,
    }))
}

/// Spectrum of `Δ_dim` on the quotient complex; `dim < 0` means the top.
pub fn spectrum(group: &str, gens: &str, dim: i32, augmented: bool) -> grouppoly::Result<Value> {
    let h = subgroup(group, gens)?;
    let c = build_quotient_capped(&h, FACE_CAP, WORK_CAP)?;
    let dim = if dim < 0 { c.n() as i64 - 1 } else { dim as i64 };
    let aug = if augmented { Augmentation::Augmented } else { Augmentation::Unaugmented };
    let sp = laplacian_spectrum_capped(&c, dim, aug, LAPLACIAN_CAP)?;
    let faces: Vec<usize> = (-1..c.n() as i64).map(|j| c.face_count(j)).collect();
    Ok(json!({
        "dim": dim,
        "faces": faces,
        "char_poly": linalg::format_poly(&sp.char_poly, "λ"),
        "eigenvalues": sp.integer_roots.iter().map(|(r, m)| json!({"value": r, "mult": m})).collect::<Vec<_>>(),
        "residual": if sp.splits() { Value::Null } else { json!(linalg::format_poly(&sp.residual, "λ")) },
        "betti": c.betti(Augmentation::Augmented),
    }))
}

/// Brute-force colorings against `λ^κ χ_{P(H)}(λ)` for `λ = 1..=max_lambda`,
/// and nowhere-zero flows against `χ_{P*}(|Γ|)` for the listed groups.
pub fn hypergraph(text: &str, max_lambda: u32, groups: &str) -> grouppoly::Result<Value> {
    let h = Hypergraph::parse(text)?;
    let mut colorings = Vec::new();
    for l in 1..=max_lambda as u64 {
        colorings.push(coloring_report(&h, l, BRUTE_BUDGET)?.to_json());
    }
    let mut flows = Vec::new();
    for spec in groups.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let g = parse_group_spec(spec)?;
        flows.push(match flow_report(&h, &g, BRUTE_BUDGET) {
            Ok(r) => r.to_json(),
            Err(e) => json!({"group": spec, "error": e.to_string()}),
        });
    }
    Ok(json!({
        "vertices": h.vertex_count(),
        "edges": h.edge_count(),
        "components": components(&h),
        "colorings": colorings,
        "flows": flows,
    }))
}

fn to_js(r: grouppoly::Result<Value>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen(js_name = analyzeSubgroup)]
pub fn analyze_subgroup(group: &str, gens: &str) -> Result<String, JsValue> {
    to_js(analyze(group, gens))
}

#[wasm_bindgen(js_name = laplacianSpectrum)]
pub fn laplacian_spectrum(group: &str, gens: &str, dim: i32, augmented: bool) -> Result<String, JsValue> {
    to_js(spectrum(group, gens, dim, augmented))
}

#[wasm_bindgen(js_name = hypergraphCounts)]
pub fn hypergraph_counts(text: &str, max_lambda: u32, groups: &str) -> Result<String, JsValue> {
    to_js(hypergraph(text, max_lambda, groups))
}
