//! The quotient `X/H` of the join `X = Γ_1 ⋆ ⋯ ⋆ Γ_n`, its boundary maps,
//! combinatorial Laplacians and top homology.
//!
//! A face with support `S` is a coset `g·H_S` in `G_S`; its representative is
//! the lexicographically least tuple in the coset. Dimension `j` holds the
//! faces with `|S| = j + 1`; the empty face sits in dimension `-1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{check_cap, Error, Result};
use crate::exact;
use crate::groups::{project, GroupProduct, Subgroup, Tuple};
use crate::linalg::{self, Matrix};
use crate::polymatroid::{char_poly as chi, Base};
use crate::reptheory::{dual_table, exact_triv_distribution};
use crate::subset::Subset;

pub const DEFAULT_FACE_CAP: u128 = 1_000_000;
pub const DEFAULT_WORK_CAP: u128 = 10_000_000;
pub const DEFAULT_LAPLACIAN_CAP: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Augmentation {
    /// `∂_0` sends every vertex to the empty face.
    Augmented,
    /// `∂_0 = 0`.
    Unaugmented,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub support: Subset,
    /// Coordinates of the representative, listed over `support` in order.
    pub rep: Tuple,
}

struct SupportCosets {
    product: GroupProduct,
    /// Coset id for every element of `G_S`, by encoding.
    label: Vec<u32>,
    offset: usize,
}

pub struct QuotientComplex {
    parent: GroupProduct,
    n: usize,
    /// `faces[j + 1]` lists the faces of dimension `j`.
    faces: Vec<Vec<Face>>,
    supports: BTreeMap<u32, SupportCosets>,
    /// `boundary[j]` holds `∂_j` as `(row, col, sign)`, for `j = 0..n`; `∂_0`
    /// is the augmentation.
    boundary: Vec<Vec<(usize, usize, i64)>>,
}

pub fn build_quotient(h: &Subgroup) -> Result<QuotientComplex> {
    build_quotient_capped(h, DEFAULT_FACE_CAP, DEFAULT_WORK_CAP)
}

pub fn build_quotient_capped(h: &Subgroup, face_cap: u128, work_cap: u128) -> Result<QuotientComplex> {
    let g = h.parent();
    let n = h.n();
    let work: u128 = Subset::all(n).map(|s| g.order_on(s)).sum();
    check_cap("coset labelling work Σ|G_S|", work, work_cap)?;
    let faces_total: u128 = Subset::all(n).map(|s| g.order_on(s) / h.card_on(s) as u128).sum();
    check_cap("face count Σ|G_S|/|H_S|", faces_total, face_cap)?;
    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); n + 1];
    let mut supports = BTreeMap::new();
    let mut by_size: Vec<Vec<Subset>> = vec![Vec::new(); n + 1];
    for s in Subset::all(n) {
        by_size[s.len()].push(s);
    }
    for (size, list) in by_size.iter().enumerate() {
        for &s in list {
            let product = g.restrict(s);
            let hs = project(h, s);
            let order = product.order() as usize;
            let mut label = vec![u32::MAX; order];
            let offset = faces[size].len();
            let mut next = 0u32;
            for code in 0..order as u64 {
                if label[code as usize] != u32::MAX {
                    continue;
                }
                let rep = product.decode(code);
                for k in hs.elements() {
                    label[product.encode(&product.mul(&rep, k)) as usize] = next;
                }
                faces[size].push(Face { support: s, rep });
                next += 1;
            }
            supports.insert(s.bits(), SupportCosets { product, label, offset });
        }
    }
    let mut c = QuotientComplex { parent: g.clone(), n, faces, supports, boundary: Vec::new() };
    c.boundary = (0..n as i64).map(|j| c.assemble(j)).collect();
    Ok(c)
}

impl QuotientComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parent(&self) -> &GroupProduct {
        &self.parent
    }

    /// Faces of dimension `j ≥ -1`.
    pub fn faces(&self, j: i64) -> &[Face] {
        &self.faces[(j + 1) as usize]
    }

    pub fn face_count(&self, j: i64) -> usize {
        if j < -1 || j >= self.n as i64 {
            0
        } else {
            self.faces(j).len()
        }
    }

    /// Index within its dimension of the face containing `tuple` (coordinates
    /// over `s` in order).
    pub fn locate(&self, s: Subset, tuple: &[u32]) -> usize {
        let sc = &self.supports[&s.bits()];
        sc.offset + sc.label[sc.product.encode(tuple) as usize] as usize
    }

    /// Facets of `(s, tuple)` with signs `(-1)^i` for the `i`-th coordinate
    /// of `s` (counting from 0).
    pub fn facets_of(&self, s: Subset, tuple: &[u32]) -> Vec<(usize, i64)> {
        s.elements()
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let mut t = tuple.to_vec();
                t.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (self.locate(s.without(x), &t), sign)
            })
            .collect()
    }

    fn assemble(&self, j: i64) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for (col, f) in self.faces(j).iter().enumerate() {
            for (row, sign) in self.facets_of(f.support, &f.rep) {
                out.push((row, col, sign));
            }
        }
        out
    }

    /// `∂_j` as triplets; `∂_0` is empty when unaugmented.
    pub fn boundary_triplets(&self, j: i64, aug: Augmentation) -> &[(usize, usize, i64)] {
        if j < 0 || j >= self.n as i64 || (j == 0 && aug == Augmentation::Unaugmented) {
            &[]
        } else {
            &self.boundary[j as usize]
        }
    }

    pub fn boundary_matrix(&self, j: i64, aug: Augmentation) -> Matrix {
        let mut m = vec![vec![0i64; self.face_count(j)]; self.face_count(j - 1)];
        for &(r, c, v) in self.boundary_triplets(j, aug) {
            m[r][c] += v;
        }
        m
    }

    /// `∂_{j-1} ∂_j = 0` for every `j`.
    pub fn check_boundary_squares(&self) -> bool {
        (1..self.n as i64).all(|j| {
            let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            let lower = self.boundary_triplets(j - 1, Augmentation::Augmented);
            let mut by_col: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
            for &(r, c, v) in lower {
                by_col.entry(c).or_default().push((r, v));
            }
            for &(mid, c, v) in self.boundary_triplets(j, Augmentation::Augmented) {
                for &(r, w) in by_col.get(&mid).into_iter().flatten() {
                    *acc.entry((r, c)).or_default() += v * w;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }

    /// Every face has one facet per coordinate of its support, all distinct
    /// supports.
    pub fn check_block_preservation(&self) -> bool {
        (0..self.n as i64).all(|j| {
            self.faces(j).iter().all(|f| {
                let facets = self.facets_of(f.support, &f.rep);
                facets.len() == f.support.len()
            })
        })
    }

    /// `Δ_j = ∂_j^t ∂_j + ∂_{j+1} ∂_{j+1}^t`.
    pub fn laplacian(&self, j: i64, aug: Augmentation) -> Matrix {
        let f = self.face_count(j);
        let mut m = vec![vec![0i64; f]; f];
        let mut by_row: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for &(r, c, v) in self.boundary_triplets(j, aug) {
            by_row.entry(r).or_default().push((c, v));
        }
        for entries in by_row.values() {
            for &(a, u) in entries {
                for &(b, w) in entries {
                    m[a][b] += u * w;
                }
            }
        }
        let mut by_col: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for &(r, c, v) in self.boundary_triplets(j + 1, aug) {
            by_col.entry(c).or_default().push((r, v));
        }
        for entries in by_col.values() {
            for &(a, u) in entries {
                for &(b, w) in entries {
                    m[a][b] += u * w;
                }
            }
        }
        m
    }

    pub fn boundary_rank(&self, j: i64, aug: Augmentation) -> usize {
        if self.boundary_triplets(j, aug).is_empty() {
            return 0;
        }
        linalg::rank(&self.boundary_matrix(j, aug))
    }

    /// Betti numbers `β_j = f_j - rank ∂_j - rank ∂_{j+1}` for `j = 0..n`;
    /// reduced when augmented.
    pub fn betti(&self, aug: Augmentation) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.n as i64).map(|j| self.boundary_rank(j, aug)).collect();
        (0..self.n).map(|j| self.face_count(j as i64) - ranks[j] - ranks[j + 1]).collect()
    }

    /// Per-dimension face lists and boundary triplets.
    pub fn to_json(&self) -> Value {
        let dims: Vec<Value> = (-1..self.n as i64)
            .map(|j| {
                let faces: Vec<Value> = self
                    .faces(j)
                    .iter()
                    .map(|f| json!({"support": f.support.bits(), "rep": self.parent.restrict(f.support).format_tuple(&f.rep)}))
                    .collect();
                let boundary: Vec<[i64; 3]> = if j >= 0 {
                    self.boundary_triplets(j, Augmentation::Augmented).iter().map(|&(r, c, v)| [r as i64, c as i64, v]).collect()
                } else {
                    Vec::new()
                };
                json!({"dim": j, "faces": faces, "boundary": boundary})
            })
            .collect();
        json!({"schema": 1, "n": self.n, "dimensions": dims})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub dim: i64,
    pub augmentation: Augmentation,
    /// `det(λI - Δ_j)`, indexed by degree.
    pub char_poly: Vec<BigInt>,
    /// Distinct integer eigenvalues with multiplicities, ascending.
    pub integer_roots: Vec<(i64, usize)>,
    pub residual: Vec<BigInt>,
    pub psd: bool,
}

impl SpectrumReport {
    pub fn splits(&self) -> bool {
        self.residual.len() == 1
    }

    pub fn eigenvalue_multiset(&self) -> Vec<i64> {
        self.integer_roots.iter().flat_map(|&(r, m)| std::iter::repeat_n(r, m)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "dim": self.dim,
            "augmented": self.augmentation == Augmentation::Augmented,
            "char_poly": self.char_poly.iter().map(exact::int_json).collect::<Vec<_>>(),
            "char_poly_text": linalg::format_poly(&self.char_poly, "λ"),
            "integer_roots": self.integer_roots.iter().map(|&(r, m)| json!([r, m])).collect::<Vec<_>>(),
            "residual": linalg::format_poly(&self.residual, "λ"),
            "psd": self.psd,
        })
    }
}

pub fn laplacian_spectrum(c: &QuotientComplex, j: i64, aug: Augmentation) -> Result<SpectrumReport> {
    laplacian_spectrum_capped(c, j, aug, DEFAULT_LAPLACIAN_CAP)
}

pub fn laplacian_spectrum_capped(c: &QuotientComplex, j: i64, aug: Augmentation, cap: usize) -> Result<SpectrumReport> {
    if j < 0 || j >= c.n() as i64 {
        return Err(Error::Domain(format!("dimension {j} outside 0..{}", c.n() - 1)));
    }
    check_cap("Laplacian size |F_j|", c.face_count(j) as u128, cap as u128)?;
    let m = c.laplacian(j, aug);
    Ok(spectrum_of(&m, j, aug))
}

pub fn spectrum_of(m: &[Vec<i64>], dim: i64, augmentation: Augmentation) -> SpectrumReport {
    let poly = linalg::char_poly(m);
    let bound = m.iter().map(|r| r.iter().map(|v| v.unsigned_abs()).sum::<u64>()).max().unwrap_or(0);
    let (roots, residual) = linalg::integer_roots(&poly, bound);
    let mut grouped: Vec<(i64, usize)> = Vec::new();
    for r in roots {
        match grouped.last_mut() {
            Some((v, k)) if *v == r => *k += 1,
            _ => grouped.push((r, 1)),
        }
    }
    let psd = grouped.iter().all(|&(r, _)| r >= 0) && linalg::no_negative_roots(&residual);
    SpectrumReport { dim, augmentation, char_poly: poly, integer_roots: grouped, residual, psd }
}

/// `card(E - x) = card(E)` for every `x`.
pub fn top_spectrum_hypothesis(h: &Subgroup) -> bool {
    let n = h.n();
    let e = Subset::full(n);
    (0..n).all(|x| h.card_on(e.without(x)) == h.order() as u64)
}

/// The top spectrum predicted from the triv distribution of `R(H)`: eigenvalue
/// `Σ_{x∈S} |Γ_x|` with multiplicity the total dimension of the irreducibles
/// with `triv = S`.
pub fn predicted_top_spectrum(h: &Subgroup) -> Result<Vec<(i64, BigInt)>> {
    if !top_spectrum_hypothesis(h) {
        return Err(Error::Capability(
            "top spectrum prediction needs card(E - x) = card(E) for every x; the hypothesis fails".into(),
        ));
    }
    let g = h.parent();
    let dist = exact_triv_distribution(h);
    let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
    for s in Subset::all(h.n()) {
        let d = &dist[s.index()];
        if d.is_zero() {
            continue;
        }
        let ev: i64 = s.iter().map(|x| g.factor(x).order() as i64).sum();
        *acc.entry(ev).or_insert_with(BigInt::zero) += d;
    }
    Ok(acc.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeReport {
    pub x: usize,
    pub factor_order: usize,
    pub top: SpectrumReport,
    pub link: SpectrumReport,
    /// Top eigenvalues equal the link eigenvalues plus one, with
    /// multiplicity.
    pub shift_by_one: bool,
    /// `Some` when `|Γ_x| = 2`, where the shift is asserted.
    pub verified: Option<bool>,
}

impl ConeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "x": self.x + 1,
            "factor_order": self.factor_order,
            "top": self.top.to_json(),
            "link": self.link.to_json(),
            "shift_by_one": self.shift_by_one,
            "verified": self.verified,
        })
    }
}

/// Compare `Δ_{n-1}(X/H)` with `Δ_{n-2}(X'/H')`, `H' = π_{E-x}(H)`, for a
/// coloop `x`.
pub fn coloop_cone_check(h: &Subgroup, x: usize) -> Result<ConeReport> {
    let n = h.n();
    if x >= n {
        return Err(Error::Domain(format!("coordinate {} outside 1..{n}", x + 1)));
    }
    let e = Subset::full(n);
    let cx = h.card_on(Subset::singleton(x));
    if cx == 1 || h.order() as u64 != h.card_on(e.without(x)) * cx {
        return Err(Error::Domain(format!("coordinate {} is not a coloop of P(H)", x + 1)));
    }
    let top_c = build_quotient(h)?;
    let top = laplacian_spectrum(&top_c, n as i64 - 1, Augmentation::Augmented)?;
    let link = if n == 1 {
        spectrum_of(&[vec![0]], -1, Augmentation::Augmented)
    } else {
        let hp = project(h, e.without(x));
        let c = build_quotient(&hp)?;
        laplacian_spectrum(&c, n as i64 - 2, Augmentation::Augmented)?
    };
    let shifted: Vec<i64> = link.eigenvalue_multiset().into_iter().map(|v| v + 1).collect();
    let shift_by_one = top.splits() && link.splits() && top.eigenvalue_multiset() == shifted;
    let factor_order = h.parent().factor(x).order();
    Ok(ConeReport { x, factor_order, top, link, shift_by_one, verified: (factor_order == 2).then_some(shift_by_one) })
}

pub fn top_betti(c: &QuotientComplex) -> usize {
    let top = c.n() as i64 - 1;
    c.face_count(top) - c.boundary_rank(top, Augmentation::Augmented)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TopHomologyReport {
    pub betti: usize,
    pub triv_empty: BigInt,
    /// `χ_{P*}(|Γ|)` when every factor has the same order.
    pub chi_dual: Option<BigRational>,
    pub note: Option<String>,
}

impl TopHomologyReport {
    pub fn matches(&self) -> bool {
        let b = BigInt::from(self.betti);
        b == self.triv_empty && self.chi_dual.as_ref().is_none_or(|c| *c == BigRational::from_integer(b.clone()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "betti": self.betti,
            "triv_empty": exact::int_json(&self.triv_empty),
            "chi_dual": self.chi_dual.as_ref().map(exact::fmt),
            "note": self.note,
            "match": self.matches(),
        })
    }
}

pub fn verify_top_homology(h: &Subgroup) -> Result<TopHomologyReport> {
    let c = build_quotient(h)?;
    verify_top_homology_on(h, &c)
}

pub fn verify_top_homology_on(h: &Subgroup, c: &QuotientComplex) -> Result<TopHomologyReport> {
    let betti = top_betti(c);
    let triv_empty = exact_triv_distribution(h)[0].clone();
    let g = h.parent();
    let q = g.factor(0).order();
    let (chi_dual, note) = if g.factors().all(|f| f.order() == q) {
        let dual = dual_table(h, Base::GroupOrder(q as u64))?;
        (Some(chi(&dual).eval_at_power(1)), None)
    } else {
        (None, Some("factor orders differ; χ_{P*}(|Γ|) comparison skipped".to_string()))
    };
    Ok(TopHomologyReport { betti, triv_empty, chi_dual, note })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    /// `Σ_S (-1)^{|S|-1} |G_S|/|H_S|`, the empty set included.
    pub alternating_sum: BigInt,
    /// `(-1)^{n-1} β_{n-1}`.
    pub signed_top_betti: BigInt,
    /// Reduced Betti numbers in dimensions `0..n-1`.
    pub lower_betti: Vec<usize>,
}

impl EulerReport {
    pub fn matches(&self) -> bool {
        self.alternating_sum == self.signed_top_betti && self.lower_betti.iter().all(|&b| b == 0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "alternating_sum": exact::int_json(&self.alternating_sum),
            "signed_top_betti": exact::int_json(&self.signed_top_betti),
            "lower_betti": self.lower_betti,
            "match": self.matches(),
        })
    }
}

pub fn euler_check(c: &QuotientComplex) -> EulerReport {
    let n = c.n();
    let mut alt = BigInt::zero();
    for j in -1..n as i64 {
        let f = BigInt::from(c.face_count(j));
        if j % 2 == 0 {
            alt += f;
        } else {
            alt -= f;
        }
    }
    let betti = c.betti(Augmentation::Augmented);
    let top = BigInt::from(betti[n - 1]);
    let signed = if (n - 1) % 2 == 0 { top } else { -top };
    EulerReport { alternating_sum: alt, signed_top_betti: signed, lower_betti: betti[..n - 1].to_vec() }
}

/// Edge multiplicities between vertex supports `{x}` and `{y}` in the
/// 1-skeleton, keyed by the support of the edge.
pub fn edge_counts(c: &QuotientComplex) -> BTreeMap<Subset, usize> {
    let mut out = BTreeMap::new();
    if c.n() >= 2 {
        for f in c.faces(1) {
            *out.entry(f.support).or_insert(0) += 1;
        }
    }
    out
}
