use std::fs;

use crate::error::{Error, Result};

use super::{FiniteGroup, GroupProduct, Tuple};

/// Parses one group spec: `cyclic:6`, `symmetric:3`, `dihedral:4`,
/// `quaternion:8`, `abelian:2x2`, or `table:<path>`.
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let (kind, arg) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("group spec '{spec}' lacks ':'")))?;
    let num = |a: &str| a.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad group size in '{spec}'")));
    match kind.trim() {
        "cyclic" => FiniteGroup::cyclic(num(arg)?),
        "symmetric" => FiniteGroup::symmetric(num(arg)?),
        "dihedral" => FiniteGroup::dihedral(num(arg)?),
        "quaternion" => {
            if num(arg)? != 8 {
                return Err(Error::Domain("only the quaternion group of order 8 is built in".into()));
            }
            FiniteGroup::quaternion()
        }
        "abelian" => {
            let orders = arg.split('x').map(num).collect::<Result<Vec<_>>>()?;
            FiniteGroup::abelian(&orders)
        }
        "table" => {
            let text = fs::read_to_string(arg.trim())
                .map_err(|e| Error::Parse(format!("cannot read Cayley table '{}': {e}", arg.trim())))?;
            parse_cayley_table(&text)
        }
        other => Err(Error::Parse(format!("unknown group kind '{other}'"))),
    }
}

/// A product spec is a comma-separated list of group specs; `spec^n`
/// repeats a factor. `n`, when given, replicates a single factor n times.
pub fn parse_product_spec(spec: &str, n: Option<usize>) -> Result<GroupProduct> {
    let mut factors = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (g, rep) = match part.rsplit_once('^') {
            Some((g, r)) => (g, r.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in '{part}'")))?),
            None => (part, 1),
        };
        let group = parse_group_spec(g)?;
        for _ in 0..rep {
            factors.push(group.clone());
        }
    }
    if let Some(n) = n {
        if factors.len() == 1 {
            let g = factors.pop().unwrap();
            return GroupProduct::power(g, n);
        }
        if factors.len() != n {
            return Err(Error::Domain(format!("spec gives {} factors but n = {n}", factors.len())));
        }
    }
    GroupProduct::new(factors)
}

/// Cayley table text: `order N`, N rows of N indices, then optionally
/// `names` followed by N whitespace-separated names.
pub fn parse_cayley_table(text: &str) -> Result<FiniteGroup> {
    let mut tokens = text.lines().filter(|l| !l.trim_start().starts_with('#')).flat_map(str::split_whitespace);
    if tokens.next() != Some("order") {
        return Err(Error::Parse("Cayley table must start with 'order N'".into()));
    }
    let n: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("missing table order".into()))?;
    let mut table = vec![vec![0usize; n]; n];
    for (g, row) in table.iter_mut().enumerate() {
        for (h, cell) in row.iter_mut().enumerate() {
            *cell = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("missing or bad entry at row {g}, column {h}")))?;
        }
    }
    let names = match tokens.next() {
        None => None,
        Some("names") => Some(tokens.by_ref().take(n).map(str::to_string).collect()),
        Some(t) => return Err(Error::Parse(format!("unexpected token '{t}' after table"))),
    };
    FiniteGroup::from_table(table, names)
}

/// Parses a tuple such as `(12),(123)`, `1|2|0` or `(0,1,1)`.
pub fn parse_tuple(g: &GroupProduct, s: &str) -> Result<Tuple> {
    let s = s.trim();
    let mut parts: Vec<&str> = if s.contains('|') { s.split('|').collect() } else { split_top_level(s) };
    if parts.len() == 1 && g.n() > 1 && s.starts_with('(') && s.ends_with(')') {
        parts = split_top_level(&s[1..s.len() - 1]);
    }
    if parts.len() != g.n() {
        return Err(Error::Parse(format!("tuple '{s}' has {} coordinates, expected {}", parts.len(), g.n())));
    }
    parts.iter().enumerate().map(|(x, p)| g.factor(x).parse_element(p).map(|v| v as u32)).collect()
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// One tuple per nonblank line; `#` starts a comment.
pub fn read_generators(g: &GroupProduct, text: &str) -> Result<Vec<Tuple>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_tuple(g, l))
        .collect()
}
