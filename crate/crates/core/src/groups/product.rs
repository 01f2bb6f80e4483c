use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{check_cap, Error, Result};
use crate::subset::Subset;

use super::FiniteGroup;

/// An element of a product: one factor-element index per coordinate.
pub type Tuple = Vec<u32>;

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// `G = Γ_1 x .. x Γ_n` with coordinatewise multiplication. Coordinates are
/// 0-based internally and displayed 1-based.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupProduct {
    factors: Vec<Arc<FiniteGroup>>,
}

impl fmt::Debug for GroupProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupProduct({})", self.label())
    }
}

pub fn direct_product(factors: Vec<FiniteGroup>) -> Result<GroupProduct> {
    GroupProduct::new(factors)
}

impl GroupProduct {
    pub fn new(factors: Vec<FiniteGroup>) -> Result<GroupProduct> {
        Self::from_shared(factors.into_iter().map(Arc::new).collect())
    }

    pub fn from_shared(factors: Vec<Arc<FiniteGroup>>) -> Result<GroupProduct> {
        if factors.is_empty() {
            return Err(Error::Domain("a group product needs at least one factor".into()));
        }
        if factors.len() > crate::subset::MAX_GROUND {
            return Err(Error::scale("product arity", factors.len() as u128, crate::subset::MAX_GROUND as u128));
        }
        Ok(GroupProduct { factors })
    }

    /// `Γ^n`.
    pub fn power(g: FiniteGroup, n: usize) -> Result<GroupProduct> {
        let g = Arc::new(g);
        Self::from_shared(vec![g; n])
    }

    /// The sub-product on the coordinates in `s`; empty `s` gives the
    /// zero-arity product, the trivial group.
    pub fn restrict(&self, s: Subset) -> GroupProduct {
        GroupProduct { factors: s.iter().map(|x| self.factors[x].clone()).collect() }
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, x: usize) -> &FiniteGroup {
        &self.factors[x]
    }

    pub fn factors(&self) -> impl Iterator<Item = &FiniteGroup> {
        self.factors.iter().map(|f| f.as_ref())
    }

    /// True when every factor is the same group.
    pub fn is_power(&self) -> bool {
        self.factors.windows(2).all(|w| w[0] == w[1])
    }

    pub fn order(&self) -> u128 {
        self.order_on(Subset::full(self.n()))
    }

    /// `|G_S|`, saturating at `u128::MAX`.
    pub fn order_on(&self, s: Subset) -> u128 {
        s.iter().fold(1u128, |acc, x| acc.saturating_mul(self.factors[x].order() as u128))
    }

    pub fn identity(&self) -> Tuple {
        self.factors.iter().map(|f| f.identity() as u32).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Tuple {
        self.factors.iter().zip(a.iter().zip(b)).map(|(f, (&x, &y))| f.mul(x as usize, y as usize) as u32).collect()
    }

    pub fn inv(&self, a: &[u32]) -> Tuple {
        self.factors.iter().zip(a).map(|(f, &x)| f.inv(x as usize) as u32).collect()
    }

    pub fn is_identity_at(&self, t: &[u32], x: usize) -> bool {
        t[x] as usize == self.factors[x].identity()
    }

    pub fn validate(&self, t: &[u32]) -> Result<()> {
        if t.len() != self.n() {
            return Err(Error::Domain(format!("tuple has arity {}, product has {}", t.len(), self.n())));
        }
        for (x, (&v, f)) in t.iter().zip(&self.factors).enumerate() {
            if v as usize >= f.order() {
                return Err(Error::Domain(format!("coordinate {} index {v} exceeds factor order {}", x + 1, f.order())));
            }
        }
        Ok(())
    }

    /// Mixed-radix code of a tuple (first coordinate most significant).
    /// Only meaningful when `order()` fits in a `u64`.
    pub fn encode(&self, t: &[u32]) -> u64 {
        t.iter().zip(&self.factors).fold(0u64, |acc, (&v, f)| acc * f.order() as u64 + v as u64)
    }

    pub fn decode(&self, mut code: u64) -> Tuple {
        let mut t = vec![0u32; self.n()];
        for x in (0..self.n()).rev() {
            let m = self.factors[x].order() as u64;
            t[x] = (code % m) as u32;
            code /= m;
        }
        t
    }

    /// All elements in lexicographic order, refusing products above `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Tuple>> {
        check_cap("product order", self.order(), cap)?;
        Ok((0..self.order() as u64).map(|c| self.decode(c)).collect())
    }

    pub fn format_tuple(&self, t: &[u32]) -> String {
        let parts: Vec<&str> = t.iter().zip(&self.factors).map(|(&v, f)| f.name(v as usize)).collect();
        format!("({})", parts.join(","))
    }

    pub fn label(&self) -> String {
        self.factors.iter().map(|f| f.label().to_string()).collect::<Vec<_>>().join(" x ")
    }
}

/// A subgroup of a product, stored as its sorted element list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: GroupProduct,
    elements: Vec<Tuple>,
    generators: Vec<Tuple>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    /// Wraps an element list, checking it is a subgroup.
    pub fn from_elements(parent: GroupProduct, mut elements: Vec<Tuple>) -> Result<Subgroup> {
        for t in &elements {
            parent.validate(t)?;
        }
        elements.sort_unstable();
        elements.dedup();
        let h = Subgroup { parent, elements, generators: Vec::new() };
        h.check_closed()?;
        Ok(h)
    }

    pub(crate) fn from_sorted_unchecked(parent: GroupProduct, elements: Vec<Tuple>) -> Subgroup {
        Subgroup { parent, elements, generators: Vec::new() }
    }

    pub fn trivial(parent: GroupProduct) -> Subgroup {
        let e = parent.identity();
        Subgroup { parent, elements: vec![e], generators: Vec::new() }
    }

    pub fn full(parent: GroupProduct, cap: u128) -> Result<Subgroup> {
        let elements = parent.elements(cap)?;
        Ok(Subgroup { parent, elements, generators: Vec::new() })
    }

    pub fn check_closed(&self) -> Result<()> {
        let id = self.parent.identity();
        if !self.contains(&id) {
            return Err(Error::Validation("element set does not contain the identity".into()));
        }
        for a in &self.elements {
            if !self.contains(&self.parent.inv(a)) {
                return Err(Error::Validation(format!("not closed under inverse at {}", self.parent.format_tuple(a))));
            }
            for b in &self.elements {
                let c = self.parent.mul(a, b);
                if !self.contains(&c) {
                    return Err(Error::Validation(format!(
                        "not closed under product: {} * {}",
                        self.parent.format_tuple(a),
                        self.parent.format_tuple(b)
                    )));
                }
            }
        }
        if self.parent.order() % self.elements.len() as u128 != 0 {
            return Err(Error::Validation("order does not divide the product order".into()));
        }
        Ok(())
    }

    pub fn parent(&self) -> &GroupProduct {
        &self.parent
    }

    pub fn n(&self) -> usize {
        self.parent.n()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Tuple] {
        &self.elements
    }

    pub fn generators(&self) -> &[Tuple] {
        &self.generators
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(t)).is_ok()
    }

    /// `|H_S|` without building the projected subgroup.
    pub fn card_on(&self, s: Subset) -> u64 {
        count_projections(&self.elements, s)
    }

    pub fn to_raw(&self) -> RawSubset {
        RawSubset { parent: self.parent.clone(), elements: self.elements.clone() }
    }
}

pub(crate) fn count_projections(elements: &[Tuple], s: Subset) -> u64 {
    if s.is_empty() {
        return 1;
    }
    if s.len() == elements.first().map_or(0, |t| t.len()) {
        return elements.len() as u64;
    }
    let coords = s.elements();
    let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(elements.len());
    for t in elements {
        seen.insert(coords.iter().map(|&x| t[x]).collect());
    }
    seen.len() as u64
}

/// Any nonempty set of distinct tuples; no closure is assumed.
#[derive(Clone, Debug)]
pub struct RawSubset {
    parent: GroupProduct,
    elements: Vec<Tuple>,
}

impl RawSubset {
    pub fn new(parent: GroupProduct, elements: Vec<Tuple>) -> Result<RawSubset> {
        if elements.is_empty() {
            return Err(Error::Domain("raw subset must be nonempty".into()));
        }
        for t in &elements {
            parent.validate(t)?;
        }
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != elements.len() {
            return Err(Error::Domain("raw subset elements must be distinct".into()));
        }
        Ok(RawSubset { parent, elements: sorted })
    }

    pub fn parent(&self) -> &GroupProduct {
        &self.parent
    }

    pub fn elements(&self) -> &[Tuple] {
        &self.elements
    }

    pub fn card_on(&self, s: Subset) -> u64 {
        count_projections(&self.elements, s)
    }
}

pub fn subgroup_closure(parent: &GroupProduct, generators: &[Tuple]) -> Result<Subgroup> {
    subgroup_closure_capped(parent, generators, DEFAULT_CLOSURE_CAP)
}

/// Breadth-first closure: right-multiply every found element by every
/// generator until nothing new appears.
pub fn subgroup_closure_capped(parent: &GroupProduct, generators: &[Tuple], cap: usize) -> Result<Subgroup> {
    for g in generators {
        parent.validate(g)?;
    }
    let id = parent.identity();
    let mut seen: HashSet<Tuple> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head].clone();
        head += 1;
        for g in generators {
            let c = parent.mul(&a, g);
            if !seen.contains(&c) {
                seen.insert(c.clone());
                queue.push(c);
                check_cap("subgroup closure size", queue.len() as u128, cap as u128)?;
            }
        }
    }
    queue.sort_unstable();
    Ok(Subgroup { parent: parent.clone(), elements: queue, generators: generators.to_vec() })
}

/// `π_S(H)` as a subgroup of the sub-product on `S`.
pub fn project(h: &Subgroup, s: Subset) -> Subgroup {
    let coords = s.elements();
    let mut elements: Vec<Tuple> = h.elements.iter().map(|t| coords.iter().map(|&x| t[x]).collect()).collect();
    elements.sort_unstable();
    elements.dedup();
    Subgroup { parent: h.parent.restrict(s), elements, generators: Vec::new() }
}

/// `π_{E-S}(ker π_S)`, a realization of the contraction by `S`.
pub fn kernel_contract(h: &Subgroup, s: Subset) -> Result<Subgroup> {
    let n = h.n();
    if s == Subset::full(n) {
        return Err(Error::Domain("kernel_contract needs a proper subset of the ground set".into()));
    }
    let rest = s.complement(n);
    let coords = rest.elements();
    let mut elements: Vec<Tuple> = h
        .elements
        .iter()
        .filter(|t| s.iter().all(|x| h.parent.is_identity_at(t, x)))
        .map(|t| coords.iter().map(|&x| t[x]).collect())
        .collect();
    elements.sort_unstable();
    elements.dedup();
    Ok(Subgroup { parent: h.parent.restrict(rest), elements, generators: Vec::new() })
}
