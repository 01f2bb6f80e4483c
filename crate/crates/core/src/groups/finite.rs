use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Which built-in family a group came from. Character tables and the
/// canonical dual isomorphism for abelian groups depend on this.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    /// `Z/n1 x .. x Z/nr`, elements in mixed radix with the first factor most significant.
    Abelian(Vec<usize>),
    /// Elements are the permutations of `1..=n` in lexicographic order.
    Symmetric(usize),
    /// Order `2n`; element `e*n + k` is `r^k s^e`.
    Dihedral(usize),
    /// Elements `1,-1,i,-i,j,-j,k,-k` in that order.
    Quaternion,
    Table,
}

#[derive(Clone)]
pub struct FiniteGroup {
    kind: GroupKind,
    label: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    names: Vec<String>,
    exponent: usize,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("label", &self.label).field("order", &self.order).finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul && self.identity == other.identity
    }
}
impl Eq for FiniteGroup {}

/// Tables up to this order are checked for associativity on every triple.
const FULL_ASSOC_CHECK: usize = 512;

impl FiniteGroup {
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::Domain("cyclic group order must be at least 1".into()));
        }
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
        let names = (0..n).map(|a| a.to_string()).collect();
        Self::build(GroupKind::Cyclic(n), format!("Z/{n}"), n, mul, names)
    }

    pub fn abelian(orders: &[usize]) -> Result<FiniteGroup> {
        if orders.is_empty() || orders.iter().any(|&m| m == 0) {
            return Err(Error::Domain("abelian group needs positive cyclic factor orders".into()));
        }
        if orders.len() == 1 {
            return Self::cyclic(orders[0]);
        }
        let order: usize = orders.iter().product();
        let decode = |mut a: usize| {
            let mut digits = vec![0; orders.len()];
            for i in (0..orders.len()).rev() {
                digits[i] = a % orders[i];
                a /= orders[i];
            }
            digits
        };
        let encode = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (&x, &m)| acc * m + x);
        let digits: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let mut mul = Vec::with_capacity(order * order);
        for a in &digits {
            for b in &digits {
                let s: Vec<usize> = a.iter().zip(b).zip(orders).map(|((x, y), m)| (x + y) % m).collect();
                mul.push(encode(&s) as u32);
            }
        }
        let names = digits
            .iter()
            .map(|d| format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let label = orders.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join("x");
        Self::build(GroupKind::Abelian(orders.to_vec()), label, order, mul, names)
    }

    /// Symmetric group on `n <= 6` points, composition `(s*t)(i) = s(t(i))`.
    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        if n == 0 || n > 6 {
            return Err(Error::Domain(format!("symmetric group degree must be in 1..=6, got {n}")));
        }
        let perms = permutations(n);
        let index = |p: &[u8]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let order = perms.len();
        let mut mul = Vec::with_capacity(order * order);
        for s in &perms {
            for t in &perms {
                let c: Vec<u8> = (0..n).map(|i| s[t[i] as usize]).collect();
                mul.push(index(&c) as u32);
            }
        }
        let names = perms.iter().map(|p| p.iter().map(|&x| char::from(b'1' + x)).collect()).collect();
        Self::build(GroupKind::Symmetric(n), format!("S{n}"), order, mul, names)
    }

    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n < 2 {
            return Err(Error::Domain(format!("dihedral group needs n >= 2, got {n}")));
        }
        let order = 2 * n;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            let (e, a) = (x / n, x % n);
            for y in 0..order {
                let (f, b) = (y / n, y % n);
                let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                mul.push((((e + f) % 2) * n + k) as u32);
            }
        }
        let names = (0..order)
            .map(|x| {
                let (e, k) = (x / n, x % n);
                match (e, k) {
                    (0, 0) => "e".to_string(),
                    (0, 1) => "r".to_string(),
                    (0, k) => format!("r{k}"),
                    (_, 0) => "s".to_string(),
                    (_, 1) => "rs".to_string(),
                    (_, k) => format!("r{k}s"),
                }
            })
            .collect();
        Self::build(GroupKind::Dihedral(n), format!("D{n}"), order, mul, names)
    }

    pub fn quaternion() -> Result<FiniteGroup> {
        // unit index 0..4 = 1,i,j,k; element = 2*unit + (sign bit)
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let mut mul = Vec::with_capacity(64);
        for x in 0..8usize {
            for y in 0..8usize {
                let (u, neg) = UNIT[x / 2][y / 2];
                let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                mul.push((2 * u + sign as usize) as u32);
            }
        }
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        Self::build(GroupKind::Quaternion, "Q8".into(), 8, mul, names)
    }

    /// A group from an explicit Cayley table, `table[g][h] = g*h`.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<FiniteGroup> {
        let order = table.len();
        if order == 0 {
            return Err(Error::Validation("empty Cayley table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (g, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Validation(format!("row {g} has {} entries, expected {order}", row.len())));
            }
            for (h, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::Validation(format!("entry ({g},{h}) = {v} out of range")));
                }
                mul.push(v as u32);
            }
        }
        let names = match names {
            Some(n) if n.len() != order => {
                return Err(Error::Validation(format!("{} names given for {order} elements", n.len())))
            }
            Some(n) => n,
            None => (0..order).map(|g| g.to_string()).collect(),
        };
        Self::build(GroupKind::Table, format!("T{order}"), order, mul, names)
    }

    fn build(kind: GroupKind, label: String, order: usize, mul: Vec<u32>, names: Vec<String>) -> Result<FiniteGroup> {
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::Validation("no two-sided identity element".into()))?;
        let mut inv = vec![0u32; order];
        for g in 0..order {
            let h = (0..order)
                .find(|&h| at(h, g) == identity && at(g, h) == identity)
                .ok_or_else(|| Error::Validation(format!("element {} ({g}) has no inverse", names[g])))?;
            inv[g] = h as u32;
        }
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if at(at(a, b), c) != at(a, at(b, c)) {
                Err(Error::Validation(format!("not associative at ({}, {}, {})", names[a], names[b], names[c])))
            } else {
                Ok(())
            }
        };
        if order <= FULL_ASSOC_CHECK {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // deterministic sample of triples
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..200_000 {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                let a = (s % order as u64) as usize;
                let b = ((s >> 20) % order as u64) as usize;
                let c = ((s >> 40) % order as u64) as usize;
                check(a, b, c)?;
            }
        }
        let mut g = FiniteGroup { kind, label, order, mul, inv, identity, names, exponent: 1 };
        g.exponent = (0..order).fold(1, |acc, x| acc.lcm(&g.element_order(x)));
        Ok(g)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class: Vec<usize> = (0..self.order).map(|g| self.mul(self.mul(g, a), self.inv(g))).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = id;
            }
            classes.push(class);
        }
        classes
    }

    /// For `Symmetric(n)`: the permutation of element `a` as images of `0..n`.
    pub fn permutation(&self, a: usize) -> Option<Vec<u8>> {
        match self.kind {
            GroupKind::Symmetric(n) => Some(self.names[a].bytes().map(|c| c - b'1').take(n).collect()),
            _ => None,
        }
    }

    /// Look up an element by display name. Cyclic groups also accept any
    /// integer (reduced mod n); symmetric groups accept cycle notation.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if let Some(i) = self.names.iter().position(|n| n == s) {
            return Ok(i);
        }
        match &self.kind {
            GroupKind::Cyclic(n) => {
                if let Ok(v) = s.parse::<i64>() {
                    return Ok(v.rem_euclid(*n as i64) as usize);
                }
            }
            GroupKind::Symmetric(n) => {
                if let Some(p) = parse_cycles(s, *n) {
                    let name: String = p.iter().map(|&x| char::from(b'1' + x)).collect();
                    if let Some(i) = self.names.iter().position(|m| *m == name) {
                        return Ok(i);
                    }
                }
            }
            GroupKind::Abelian(orders) => {
                let inner = s.trim_start_matches('(').trim_end_matches(')');
                let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                if parts.len() == orders.len() {
                    let mut code = 0usize;
                    let mut ok = true;
                    for (p, &m) in parts.iter().zip(orders) {
                        match p.parse::<i64>() {
                            Ok(v) => code = code * m + v.rem_euclid(m as i64) as usize,
                            Err(_) => ok = false,
                        }
                    }
                    if ok {
                        return Ok(code);
                    }
                }
            }
            _ => {
                if let Ok(v) = s.parse::<usize>() {
                    if v < self.order {
                        return Ok(v);
                    }
                }
            }
        }
        Err(Error::Parse(format!("'{s}' is not an element of {}", self.label)))
    }
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Parses cycle notation such as `(12)(34)`, `(1)`, `e` or `()` into
/// one-line images of `0..n`.
fn parse_cycles(s: &str, n: usize) -> Option<Vec<u8>> {
    let mut p: Vec<u8> = (0..n as u8).collect();
    let s = s.trim();
    if s == "e" || s == "()" || s == "id" {
        return Some(p);
    }
    if !s.starts_with('(') {
        return None;
    }
    for cyc in s.split(')').filter(|c| !c.trim().is_empty()) {
        let body = cyc.trim().strip_prefix('(')?;
        let pts: Vec<u8> = if body.contains(',') || body.contains(' ') {
            body.split([',', ' ']).filter(|t| !t.is_empty()).map(|t| t.parse::<u8>().ok()).collect::<Option<_>>()?
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect::<Option<_>>()?
        };
        if pts.iter().any(|&x| x == 0 || x as usize > n) {
            return None;
        }
        // a cycle (a b c) maps a->b->c->a; later cycles act first
        let mut q = vec![0u8; n];
        for i in 0..n {
            q[i] = i as u8;
        }
        for w in 0..pts.len() {
            q[(pts[w] - 1) as usize] = pts[(w + 1) % pts.len()] - 1;
        }
        // p := p . q  (apply q first)
        p = (0..n).map(|i| p[q[i] as usize]).collect();
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_six() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.conjugacy_classes().len(), 6);
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn s3_classes_by_brute_force() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn q8_has_five_classes() {
        let g = FiniteGroup::quaternion().unwrap();
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert_eq!(g.exponent(), 4);
        let i = g.parse_element("i").unwrap();
        let j = g.parse_element("j").unwrap();
        assert_eq!(g.name(g.mul(i, j)), "k");
        assert_eq!(g.name(g.mul(j, i)), "-k");
    }

    #[test]
    fn dihedral_relations() {
        let g = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        let r = g.parse_element("r").unwrap();
        let s = g.parse_element("s").unwrap();
        // s r s^-1 = r^-1
        assert_eq!(g.mul(g.mul(s, r), g.inv(s)), g.inv(r));
        assert_eq!(g.conjugacy_classes().len(), 5);
    }

    #[test]
    fn cycle_notation_matches_one_line() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.name(g.parse_element("(12)").unwrap()), "213");
        assert_eq!(g.name(g.parse_element("(123)").unwrap()), "231");
        assert_eq!(g.parse_element("(1)").unwrap(), g.identity());
    }

    #[test]
    fn bad_table_is_rejected() {
        // not associative: a "group" whose table is a Latin square but no group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(t, None).unwrap_err();
        assert!(matches!(err, Error::Validation(m) if m.contains("associative")));
        let t = vec![vec![0, 0], vec![1, 1]];
        assert!(FiniteGroup::from_table(t, None).is_err());
    }
}
