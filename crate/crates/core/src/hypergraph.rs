//! Hypergraphs with multiset edges, their star-graph matrix, the associated
//! integer polymatroid, and exhaustive coloring and flow counts.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{check_cap, Error, Result};
use crate::exact;
use crate::groups::FiniteGroup;
use crate::linalg::{self, Matrix};
use crate::polymatroid::{a_dual, char_poly, AlphaVector, Base, RankTable};
use crate::subset::{Subset, MAX_GROUND};

pub const DEFAULT_BRUTE_BUDGET: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: Vec<String>,
    /// Each edge as a sorted multiset of vertex indices.
    edges: Vec<Vec<usize>>,
}

fn vertex_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

impl Hypergraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Vec<usize>>) -> Result<Hypergraph> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::Validation(format!("vertex {v} listed twice")));
            }
        }
        let mut out = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Validation(format!("edge {} is empty", i + 1)));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::Validation(format!("edge {} uses unknown vertex index {v}", i + 1)));
            }
            e.sort_unstable();
            out.push(e);
        }
        Ok(Hypergraph { vertices, edges: out })
    }

    /// Vertex names are sorted (numerically when all are integers) so the
    /// largest index is the alphabetically last vertex.
    pub fn from_named(edges: &[Vec<&str>], isolated: &[&str]) -> Result<Hypergraph> {
        let mut names: Vec<String> = edges.iter().flatten().chain(isolated).map(|s| s.to_string()).collect();
        names.sort_by(|a, b| vertex_cmp(a, b));
        names.dedup();
        let idx: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let edges = edges.iter().map(|e| e.iter().map(|v| idx[v]).collect()).collect();
        Hypergraph::new(names, edges)
    }

    /// One edge per line; `vertex z` declares an isolated vertex; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut edges: Vec<Vec<&str>> = Vec::new();
        let mut isolated = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            if words[0] == "vertex" {
                if words.len() < 2 {
                    return Err(Error::Parse(format!("`vertex` needs a name: {line}")));
                }
                isolated.extend_from_slice(&words[1..]);
            } else {
                edges.push(words);
            }
        }
        Hypergraph::from_named(&edges, &isolated)
    }

    /// `H(G)` for a multigraph on vertices `0..n`; a loop becomes `{a,a}`.
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Result<Hypergraph> {
        let names = (1..=n).map(|i| i.to_string()).collect();
        Hypergraph::new(names, edges.iter().map(|&(a, b)| vec![a, b]).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, x: usize) -> &[usize] {
        &self.edges[x]
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `|x|` as a multiset.
    pub fn size(&self, x: usize) -> usize {
        self.edges[x].len()
    }

    pub fn total_size(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let used: HashSet<usize> = self.edges.iter().flatten().copied().collect();
        for (i, v) in self.vertices.iter().enumerate() {
            if !used.contains(&i) {
                out.push_str(&format!("vertex {v}\n"));
            }
        }
        for e in &self.edges {
            let words: Vec<&str> = e.iter().map(|&v| self.vertices[v].as_str()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{{{}}}", e.iter().map(|&v| self.vertices[v].as_str()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "V = {{{}}}, E = [{}]", self.vertices.join(","), edges.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    Max,
    Min,
}

/// `A(H)`: rows are vertices, the columns of block `x` are the edges of
/// `SG(H)` coming from `x`, directed away from the anchor `v_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarGraphMatrix {
    pub matrix: Matrix,
    pub blocks: Vec<Range<usize>>,
    pub anchors: Vec<usize>,
    pub components: usize,
}

impl StarGraphMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.end)
    }

    pub fn columns_of(&self, s: Subset) -> Vec<usize> {
        s.iter().flat_map(|x| self.blocks[x].clone()).collect()
    }

    /// Rational rank of the columns of the blocks in `s`.
    pub fn rank_on(&self, s: Subset) -> usize {
        let cols = self.columns_of(s);
        let sub: Matrix = self.matrix.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        linalg::rank(&sub)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "matrix": self.matrix,
            "blocks": self.blocks.iter().map(|b| [b.start, b.end]).collect::<Vec<_>>(),
            "anchors": self.anchors,
            "components": self.components,
        })
    }
}

pub fn star_graph(h: &Hypergraph) -> StarGraphMatrix {
    star_graph_with(h, Anchor::Max)
}

pub fn star_graph_with(h: &Hypergraph, anchor: Anchor) -> StarGraphMatrix {
    let m = h.vertex_count();
    let mut columns: Vec<Vec<i64>> = Vec::new();
    let mut blocks = Vec::new();
    let mut anchors = Vec::new();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while p[r] != r {
            r = p[r];
        }
        p[v] = r;
        r
    }
    for e in h.edges() {
        let vx = match anchor {
            Anchor::Max => *e.last().unwrap(),
            Anchor::Min => e[0],
        };
        let start = columns.len();
        for &w in e.iter().filter(|&&w| w != vx) {
            let mut col = vec![0i64; m];
            col[w] = 1;
            col[vx] = -1;
            columns.push(col);
            let (a, b) = (find(&mut parent, w), find(&mut parent, vx));
            parent[a] = b;
        }
        let loops = e.iter().filter(|&&w| w == vx).count() - 1;
        columns.extend(std::iter::repeat_n(vec![0i64; m], loops));
        blocks.push(start..columns.len());
        anchors.push(vx);
    }
    let components = (0..m).filter(|&v| find(&mut parent, v) == v).count();
    let matrix = (0..m).map(|v| columns.iter().map(|c| c[v]).collect()).collect();
    StarGraphMatrix { matrix, blocks, anchors, components }
}

/// `κ(H)`: components of `SG(H)`, isolated vertices included.
pub fn components(h: &Hypergraph) -> usize {
    star_graph(h).components
}

/// `P(H)` with `card(S) = b^{r_H(S)}`.
pub fn hyper_polymatroid(h: &Hypergraph, b: u64) -> Result<RankTable> {
    hyper_polymatroid_from(&star_graph(h), b)
}

pub fn hyper_polymatroid_from(a: &StarGraphMatrix, b: u64) -> Result<RankTable> {
    let n = a.blocks.len();
    check_cap("hyperedge count", n as u128, MAX_GROUND as u128)?;
    let bb = exact::big(b);
    RankTable::from_fn(n, Base::GroupOrder(b), |s| exact::pow(&bb, a.rank_on(s) as i64))
}

fn proper(h: &Hypergraph, phi: &[usize]) -> bool {
    h.edges().iter().all(|e| e.iter().any(|&v| phi[v] != phi[e[0]]))
}

/// Exhaustive count of proper colorings with `λ` colors.
pub fn count_colorings(h: &Hypergraph, lambda: u64) -> Result<u64> {
    count_colorings_capped(h, lambda, DEFAULT_BRUTE_BUDGET)
}

pub fn count_colorings_capped(h: &Hypergraph, lambda: u64, budget: u128) -> Result<u64> {
    let m = h.vertex_count();
    let space = (lambda as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    check_cap("coloring search space λ^|V|", space, budget)?;
    if m == 0 {
        return Ok(1);
    }
    if lambda == 0 {
        return Ok(0);
    }
    let mut phi = vec![0usize; m];
    let mut count = 0;
    loop {
        if proper(h, &phi) {
            count += 1;
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            phi[i] += 1;
            if (phi[i] as u64) < lambda {
                break;
            }
            phi[i] = 0;
        }
    }
}

/// Sum of `c · λ^{r(E) - r(S)}` over the terms of `χ_P`, for a table with
/// integer ranks.
pub fn char_poly_at_integer(p: &RankTable, lambda: &BigInt) -> Result<BigInt> {
    let chi = char_poly(p);
    let b = p.base().value();
    let mut total = BigInt::zero();
    for (c, m) in chi.terms() {
        let d = exact::exact_log(m, &b, 64 * p.n().max(1))
            .ok_or_else(|| Error::Domain(format!("exponent log of {} is not an integer", exact::fmt(m))))?;
        total += c * num_traits::pow(lambda.clone(), d);
    }
    Ok(total)
}

/// `λ^{κ(H)} χ_{P(H)}(λ)`.
pub fn chromatic_value(h: &Hypergraph, lambda: u64) -> Result<BigInt> {
    let sg = star_graph(h);
    let p = hyper_polymatroid_from(&sg, 2)?;
    let l = BigInt::from(lambda);
    Ok(num_traits::pow(l.clone(), sg.components) * char_poly_at_integer(&p, &l)?)
}

fn require_abelian(g: &FiniteGroup) -> Result<()> {
    if !g.is_abelian() {
        return Err(Error::Capability(format!("{} is not abelian; hypergraph flows need an abelian group", g.label())));
    }
    Ok(())
}

/// `γ · A` for a row vector `γ ∈ Γ^m`, written as indices into `g`.
fn act(g: &FiniteGroup, a: &StarGraphMatrix, gamma: &[usize]) -> Vec<usize> {
    let k = a.cols();
    (0..k)
        .map(|c| {
            let mut acc = g.identity();
            for (v, row) in a.matrix.iter().enumerate() {
                match row[c] {
                    1 => acc = g.mul(acc, gamma[v]),
                    -1 => acc = g.mul(acc, g.inv(gamma[v])),
                    _ => {}
                }
            }
            acc
        })
        .collect()
}

/// The coloring count read through `ψ(γ) = γ·A`: proper colorings are the
/// `γ` whose image is non-identity on every block, so the count factors as
/// `|ker ψ|` times the number of such image points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelColoringReport {
    pub lambda: u64,
    pub kernel: u64,
    pub lambda_kappa: BigInt,
    pub nowhere_identity_images: u64,
    pub count: BigInt,
}

impl KernelColoringReport {
    pub fn kernel_matches(&self) -> bool {
        BigInt::from(self.kernel) == self.lambda_kappa
    }
}

pub fn kernel_coloring(h: &Hypergraph, g: &FiniteGroup, budget: u128) -> Result<KernelColoringReport> {
    require_abelian(g)?;
    let sg = star_graph(h);
    let m = h.vertex_count();
    let q = g.order();
    check_cap("coloring search space |Γ|^|V|", (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX), budget)?;
    let mut image: HashSet<Vec<usize>> = HashSet::new();
    let mut kernel = 0u64;
    let mut gamma = vec![0usize; m];
    let id = g.identity();
    loop {
        let img = act(g, &sg, &gamma);
        if img.iter().all(|&v| v == id) {
            kernel += 1;
        }
        image.insert(img);
        let mut i = m;
        let done = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            gamma[i] += 1;
            if gamma[i] < q {
                break false;
            }
            gamma[i] = 0;
        };
        if done || m == 0 {
            break;
        }
    }
    let good = image.iter().filter(|img| sg.blocks.iter().all(|b| img[b.clone()].iter().any(|&v| v != id))).count() as u64;
    Ok(KernelColoringReport {
        lambda: q as u64,
        kernel,
        lambda_kappa: num_traits::pow(BigInt::from(q), sg.components),
        nowhere_identity_images: good,
        count: BigInt::from(kernel) * good,
    })
}

/// Exhaustive count of nowhere-zero `Γ`-flows: `γ ∈ Γ^k` with `A·γ = 0`
/// and every block not identically zero.
pub fn count_nzflows(h: &Hypergraph, g: &FiniteGroup) -> Result<u64> {
    count_nzflows_capped(h, g, DEFAULT_BRUTE_BUDGET)
}

pub fn count_nzflows_capped(h: &Hypergraph, g: &FiniteGroup, budget: u128) -> Result<u64> {
    require_abelian(g)?;
    let sg = star_graph(h);
    let k = sg.cols();
    let q = g.order();
    check_cap("flow search space |Γ|^Σ(|x|-1)", (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX), budget)?;
    // vertices whose last incident column is c get checked right after c
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut never = Vec::new();
    for (v, row) in sg.matrix.iter().enumerate() {
        match row.iter().rposition(|&e| e != 0) {
            Some(c) => closes[c].push(v),
            None => never.push(v),
        }
    }
    let block_end: Vec<Option<usize>> = (0..k).map(|c| sg.blocks.iter().position(|b| b.end == c + 1)).collect();
    if sg.blocks.iter().any(|b| b.is_empty()) {
        return Ok(0);
    }
    struct Dfs<'a> {
        g: &'a FiniteGroup,
        sg: &'a StarGraphMatrix,
        closes: &'a [Vec<usize>],
        block_end: &'a [Option<usize>],
        sums: Vec<usize>,
        values: Vec<usize>,
        count: u64,
    }
    impl Dfs<'_> {
        fn go(&mut self, c: usize) {
            if c == self.values.len() {
                self.count += 1;
                return;
            }
            let id = self.g.identity();
            for val in 0..self.g.order() {
                let saved = self.sums.clone();
                for (v, row) in self.sg.matrix.iter().enumerate() {
                    match row[c] {
                        1 => self.sums[v] = self.g.mul(self.sums[v], val),
                        -1 => self.sums[v] = self.g.mul(self.sums[v], self.g.inv(val)),
                        _ => {}
                    }
                }
                self.values[c] = val;
                let balanced = self.closes[c].iter().all(|&v| self.sums[v] == id);
                let nonzero = match self.block_end[c] {
                    Some(x) => self.sg.blocks[x].clone().any(|i| self.values[i] != id),
                    None => true,
                };
                if balanced && nonzero {
                    self.go(c + 1);
                }
                self.sums = saved;
            }
        }
    }
    let mut dfs = Dfs {
        g,
        sg: &sg,
        closes: &closes,
        block_end: &block_end,
        sums: vec![g.identity(); sg.rows()],
        values: vec![g.identity(); k],
        count: 0,
    };
    dfs.go(0);
    Ok(dfs.count)
}

/// `χ_{P(H)^{*a}}(|Γ|)` with `a_x = |x| - 1`.
pub fn flow_value(h: &Hypergraph, g: &FiniteGroup) -> Result<BigRational> {
    require_abelian(g)?;
    let q = g.order() as u64;
    let p = hyper_polymatroid(h, q)?;
    let qb = exact::big(q);
    let a = AlphaVector::new((0..h.edge_count()).map(|x| exact::pow(&qb, h.size(x) as i64 - 1)).collect())?;
    let dual = a_dual(&p, &a)?;
    Ok(char_poly(&dual).eval_at_power(1))
}

/// Every square submatrix of size at most `max_size` has determinant in
/// `{-1, 0, 1}`.
pub fn is_totally_unimodular(m: &[Vec<i64>], max_size: usize) -> bool {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
    for k in 1..=max_size.min(rows).min(cols) {
        let rs = combos(rows, k);
        let cs = combos(cols, k);
        for r in &rs {
            for c in &cs {
                let sub: Matrix = r.iter().map(|&i| c.iter().map(|&j| m[i][j]).collect()).collect();
                let d = linalg::det(&sub);
                if d > BigInt::one() || d < -BigInt::one() {
                    return false;
                }
            }
        }
    }
    true
}

/// A random hypergraph on at most `max_vertices` vertices with total edge
/// size at most `max_total`.
pub fn random_hypergraph<R: Rng>(rng: &mut R, max_vertices: usize, max_total: usize) -> Hypergraph {
    let m = rng.gen_range(1..=max_vertices);
    let mut edges = Vec::new();
    let mut total = 0;
    let target = rng.gen_range(2..=max_total);
    while total < target {
        let size = rng.gen_range(1..=4).min(max_total - total);
        if size == 0 {
            break;
        }
        let e: Vec<usize> = (0..size).map(|_| rng.gen_range(0..m)).collect();
        total += e.len();
        edges.push(e);
    }
    Hypergraph::new((1..=m).map(|i| i.to_string()).collect(), edges).expect("generated edges are valid")
}

/// Coloring routes for one `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringReport {
    pub lambda: u64,
    pub brute: u64,
    pub formula: BigInt,
}

impl ColoringReport {
    pub fn matches(&self) -> bool {
        BigInt::from(self.brute) == self.formula
    }

    pub fn to_json(&self) -> Value {
        json!({"lambda": self.lambda, "brute": self.brute, "formula": exact::int_json(&self.formula), "match": self.matches()})
    }
}

pub fn coloring_report(h: &Hypergraph, lambda: u64, budget: u128) -> Result<ColoringReport> {
    Ok(ColoringReport { lambda, brute: count_colorings_capped(h, lambda, budget)?, formula: chromatic_value(h, lambda)? })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowReport {
    pub group: String,
    pub brute: u64,
    pub formula: BigRational,
}

impl FlowReport {
    pub fn matches(&self) -> bool {
        exact::big(self.brute) == self.formula
    }

    pub fn to_json(&self) -> Value {
        json!({"group": self.group, "brute": self.brute, "formula": exact::fmt(&self.formula), "match": self.matches()})
    }
}

pub fn flow_report(h: &Hypergraph, g: &FiniteGroup, budget: u128) -> Result<FlowReport> {
    Ok(FlowReport { group: g.label().to_string(), brute: count_nzflows_capped(h, g, budget)?, formula: flow_value(h, g)? })
}
