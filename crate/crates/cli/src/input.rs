//! Loading groups, subgroups, rank tables and hypergraphs from flags.

use std::fs;
use std::path::Path;

use grouppoly::groups::{parse_product_spec, read_generators, subgroup_closure_capped, GroupProduct, RawSubset, Subgroup};
use grouppoly::groups::DEFAULT_CLOSURE_CAP;
use grouppoly::hypergraph::Hypergraph;
use grouppoly::polymatroid::{rank_table, rank_table_from_subset, Base, RankTable};
use grouppoly::{exact, Error, Result};

use crate::Opts;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read '{}': {e}", path.display())))
}

fn usage(msg: &str) -> Error {
    Error::Domain(msg.to_string())
}

pub fn group(opts: &Opts) -> Result<GroupProduct> {
    let spec = opts.group.as_deref().ok_or_else(|| usage("--group is required"))?;
    parse_product_spec(spec, None)
}

pub fn subgroup(opts: &Opts) -> Result<Subgroup> {
    let g = group(opts)?;
    let path = opts.gens.as_deref().ok_or_else(|| usage("--gens is required"))?;
    let gens = read_generators(&g, &read(path)?)?;
    subgroup_closure_capped(&g, &gens, DEFAULT_CLOSURE_CAP)
}

pub fn raw_subset(opts: &Opts) -> Result<RawSubset> {
    let g = group(opts)?;
    let path = opts.elems.as_deref().ok_or_else(|| usage("--elems is required"))?;
    RawSubset::new(g.clone(), read_generators(&g, &read(path)?)?)
}

/// `--b group` means `|Γ|` when all factors have one order, else `|G|`.
pub fn base(opts: &Opts, g: Option<&GroupProduct>) -> Result<Base> {
    let b = opts.b.trim();
    if b == "group" {
        let g = g.ok_or_else(|| usage("--b group needs --group"))?;
        let q = g.factor(0).order();
        let v = if g.factors().all(|f| f.order() == q) { q as u128 } else { g.order() };
        return Ok(Base::GroupOrder(u64::try_from(v).map_err(|_| usage("group order too large for a base"))?));
    }
    let r = exact::parse(b).ok_or_else(|| Error::Parse(format!("bad base '{b}'")))?;
    if r.is_integer() && *r.numer() > num_bigint::BigInt::from(1) {
        if let Ok(q) = u64::try_from(r.numer().clone()) {
            return Ok(Base::GroupOrder(q));
        }
    }
    Base::rational(r)
}

pub enum Source {
    Subgroup(Subgroup),
    Raw(RawSubset),
    Table,
}

/// A rank table from `--rank-table`, `--elems` or `--gens`, in that order.
pub fn table(opts: &Opts) -> Result<(RankTable, Source)> {
    if let Some(path) = &opts.rank_table {
        let v: serde_json::Value =
            serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("rank table JSON: {e}")))?;
        // accept a bare table or a `rank`/`dual` report wrapping one
        let inner = v.pointer("/result/table").or_else(|| v.get("table")).unwrap_or(&v);
        let p = RankTable::from_json(inner)?;
        let p = if opts.b == "group" { p } else { p.with_base(base(opts, None)?) };
        return Ok((p, Source::Table));
    }
    if opts.elems.is_some() {
        let l = raw_subset(opts)?;
        let p = rank_table_from_subset(&l, base(opts, Some(l.parent()))?)?;
        return Ok((p, Source::Raw(l)));
    }
    let h = subgroup(opts)?;
    let p = rank_table(&h, base(opts, Some(h.parent()))?)?;
    Ok((p, Source::Subgroup(h)))
}

pub fn hypergraph(opts: &Opts) -> Result<Hypergraph> {
    let path = opts.hypergraph.as_deref().ok_or_else(|| usage("--hypergraph is required"))?;
    Hypergraph::parse(&read(path)?)
}
