use std::fs;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableSource {
    Builtin,
    File,
}

/// Irreducible characters of one factor group, values in `Z[ζ_e]`
/// with `e` the group exponent. Row 0 is the trivial character.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    e: usize,
    chi: Vec<Vec<Cyclotomic>>,
    dims: Vec<u64>,
    labels: Vec<String>,
    source: TableSource,
}

impl CharacterTable {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_irreps(&self) -> usize {
        self.chi.len()
    }

    pub fn dim(&self, i: usize) -> u64 {
        self.dims[i]
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn root_order(&self) -> usize {
        self.e
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    /// `χ_i(c)` for class index `c`.
    pub fn class_value(&self, i: usize, c: usize) -> &Cyclotomic {
        &self.chi[i][c]
    }

    /// `χ_i(g)` for element index `g`.
    pub fn value(&self, i: usize, g: usize) -> &Cyclotomic {
        &self.chi[i][self.class_of[g]]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    fn assemble(group: &FiniteGroup, rows: Vec<(String, Vec<Cyclotomic>)>, source: TableSource) -> Result<CharacterTable> {
        let classes = group.conjugacy_classes();
        let mut class_of = vec![0; group.order()];
        for (c, cl) in classes.iter().enumerate() {
            for &g in cl {
                class_of[g] = c;
            }
        }
        let e = group.exponent();
        let id_class = class_of[group.identity()];
        let mut dims = Vec::new();
        let mut labels = Vec::new();
        let mut chi = Vec::new();
        for (label, row) in rows {
            if row.len() != classes.len() {
                return Err(Error::Validation(format!("character {label} has {} values for {} classes", row.len(), classes.len())));
            }
            let d = row[id_class]
                .as_integer()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Validation(format!("character {label} has no positive integer degree")))?;
            dims.push(d as u64);
            labels.push(label);
            chi.push(row.iter().map(|v| if v.order() == e { v.clone() } else { v.lift(e) }).collect());
        }
        let t = CharacterTable { group: group.clone(), classes, class_of, e, chi, dims, labels, source };
        t.validate()?;
        Ok(t)
    }

    /// Checks trivial-first, the degree sum, and row orthogonality exactly.
    pub fn validate(&self) -> Result<()> {
        let order = self.group.order() as i64;
        if self.chi.len() != self.classes.len() {
            return Err(Error::Validation(format!("{} characters for {} classes", self.chi.len(), self.classes.len())));
        }
        if self.chi.is_empty() || !self.chi[0].iter().all(|v| v.as_integer() == Some(1)) {
            return Err(Error::Validation("first row must be the trivial character".into()));
        }
        let sq: u64 = self.dims.iter().map(|d| d * d).sum();
        if sq != order as u64 {
            return Err(Error::Validation(format!("sum of squared degrees {sq} differs from |Γ| = {order}")));
        }
        for i in 0..self.chi.len() {
            for j in 0..=i {
                let mut s = Cyclotomic::int(self.e, 0);
                for (c, cl) in self.classes.iter().enumerate() {
                    s = s.add(&self.chi[i][c].mul(&self.chi[j][c].conj()).scale(cl.len() as i64));
                }
                let want = if i == j { order } else { 0 };
                if s.as_integer() != Some(want) {
                    return Err(Error::Validation(format!(
                        "rows {} and {} are not orthonormal (inner product {s} / {order})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Built-in tables: cyclic and abelian products, dihedral, `S_n` for
    /// `n <= 4`, and `Q8`.
    pub fn builtin(group: &FiniteGroup) -> Result<CharacterTable> {
        let rows = builtin_rows(group)?;
        Self::assemble(group, rows, TableSource::Builtin)
    }

    /// Text format: `classes k [zeta e]`, a line of class sizes, then one line
    /// of `k` values per character (`a0+a1*z^1+...`, `z = ζ_e`), optionally
    /// prefixed by `label:`. Classes are in the order of `conjugacy_classes`.
    pub fn parse(group: &FiniteGroup, text: &str) -> Result<CharacterTable> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header: Vec<&str> = lines.next().ok_or_else(|| Error::Parse("empty character table".into()))?.split_whitespace().collect();
        let bad_header = || Error::Parse("header must be 'classes k [zeta e]'".into());
        if header.first() != Some(&"classes") {
            return Err(bad_header());
        }
        let k: usize = header.get(1).and_then(|v| v.parse().ok()).ok_or_else(bad_header)?;
        let e: usize = match header.get(2) {
            Some(&"zeta") => header.get(3).and_then(|v| v.parse().ok()).ok_or_else(bad_header)?,
            None => group.exponent(),
            _ => return Err(bad_header()),
        };
        if group.exponent() % e != 0 {
            return Err(Error::Validation(format!("zeta order {e} does not divide the group exponent {}", group.exponent())));
        }
        let sizes: Vec<usize> = lines
            .next()
            .ok_or_else(|| Error::Parse("missing class sizes".into()))?
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad class size '{v}'"))))
            .collect::<Result<_>>()?;
        let classes = group.conjugacy_classes();
        let actual: Vec<usize> = classes.iter().map(Vec::len).collect();
        if sizes.len() != k || sizes != actual {
            return Err(Error::Validation(format!("class sizes {sizes:?} do not match the group's {actual:?}")));
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let (label, body) = match line.split_once(':') {
                Some((l, b)) => (l.trim().to_string(), b),
                None => (format!("χ{i}"), line),
            };
            let vals = body.split_whitespace().map(|v| Cyclotomic::parse(e, v)).collect::<Result<Vec<_>>>()?;
            rows.push((label, vals));
        }
        Self::assemble(group, rows, TableSource::File)
    }

    pub fn from_file(group: &FiniteGroup, path: &str) -> Result<CharacterTable> {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read '{path}': {e}")))?;
        Self::parse(group, &text)
    }

    /// The table in the text format accepted by [`CharacterTable::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("classes {} zeta {}\n", self.classes.len(), self.e);
        s += &self.classes.iter().map(|c| c.len().to_string()).collect::<Vec<_>>().join(" ");
        s.push('\n');
        for (l, row) in self.labels.iter().zip(&self.chi) {
            s += &format!("{l}: {}\n", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        }
        s
    }
}

type Rows = Vec<(String, Vec<Cyclotomic>)>;

/// Evaluates per-element character functions on class representatives.
fn rows_from_fns(group: &FiniteGroup, fns: Vec<(String, Box<dyn Fn(usize) -> Cyclotomic + '_>)>) -> Rows {
    let reps: Vec<usize> = group.conjugacy_classes().iter().map(|c| c[0]).collect();
    fns.into_iter().map(|(l, f)| (l, reps.iter().map(|&g| f(g)).collect())).collect()
}

fn builtin_rows(group: &FiniteGroup) -> Result<Rows> {
    let e = group.exponent();
    let rows = match group.kind().clone() {
        GroupKind::Cyclic(n) => rows_from_fns(
            group,
            (0..n)
                .map(|j| {
                    let f: Box<dyn Fn(usize) -> Cyclotomic> = Box::new(move |k| Cyclotomic::zeta_pow(n, (j * k) as i64).lift(e));
                    (format!("χ{j}"), f)
                })
                .collect(),
        ),
        GroupKind::Abelian(orders) => {
            let decode = |mut a: usize| {
                let mut d = vec![0; orders.len()];
                for i in (0..orders.len()).rev() {
                    d[i] = a % orders[i];
                    a /= orders[i];
                }
                d
            };
            let order = group.order();
            let mut fns: Vec<(String, Box<dyn Fn(usize) -> Cyclotomic>)> = Vec::new();
            for j in 0..order {
                let jd = decode(j);
                let orders = orders.clone();
                let label = format!("χ({})", jd.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                fns.push((
                    label,
                    Box::new(move |k| {
                        let mut kd = vec![0; orders.len()];
                        let mut a = k;
                        for i in (0..orders.len()).rev() {
                            kd[i] = a % orders[i];
                            a /= orders[i];
                        }
                        let phase: usize = (0..orders.len()).map(|i| jd[i] * kd[i] * (e / orders[i])).sum();
                        Cyclotomic::zeta_pow(e, phase as i64)
                    }),
                ));
            }
            rows_from_fns(group, fns)
        }
        GroupKind::Dihedral(n) => {
            // element x = s^(x / n) r^(x % n) in the group's encoding r^k s^e
            let split = move |x: usize| (x % n, x / n);
            let sign = |b: bool| Cyclotomic::int(e, if b { -1 } else { 1 });
            let mut fns: Vec<(String, Box<dyn Fn(usize) -> Cyclotomic>)> = vec![
                ("1".into(), Box::new(move |_| Cyclotomic::int(e, 1))),
                ("sgn".into(), Box::new(move |x| sign(split(x).1 == 1))),
            ];
            if n % 2 == 0 {
                fns.push(("ρ_r".into(), Box::new(move |x| sign(split(x).0 % 2 == 1))));
                fns.push(("ρ_rs".into(), Box::new(move |x| {
                    let (k, f) = split(x);
                    sign((k + f) % 2 == 1)
                })));
            }
            for h in 1..=(n - 1) / 2 {
                fns.push((
                    format!("τ{h}"),
                    Box::new(move |x| {
                        let (k, f) = split(x);
                        if f == 1 {
                            Cyclotomic::int(e, 0)
                        } else {
                            let z = Cyclotomic::zeta_pow(n, (h * k) as i64);
                            z.add(&z.conj()).lift(e)
                        }
                    }),
                ));
            }
            rows_from_fns(group, fns)
        }
        GroupKind::Symmetric(n) if n <= 4 => {
            let cycle_type = |g: usize| -> Vec<usize> {
                let p = group.permutation(g).unwrap();
                let mut seen = vec![false; n];
                let mut t = Vec::new();
                for i in 0..n {
                    if !seen[i] {
                        let mut len = 0;
                        let mut j = i;
                        while !seen[j] {
                            seen[j] = true;
                            j = p[j] as usize;
                            len += 1;
                        }
                        t.push(len);
                    }
                }
                t.sort_unstable();
                t
            };
            let int = |v: i64| Cyclotomic::int(e, v);
            let sgn = move |t: &[usize]| if t.iter().map(|l| l - 1).sum::<usize>() % 2 == 0 { 1 } else { -1 };
            let fix = |t: &[usize]| t.iter().filter(|&&l| l == 1).count() as i64;
            let mut fns: Vec<(String, Box<dyn Fn(usize) -> Cyclotomic + '_>)> = vec![("1".into(), Box::new(move |_| int(1)))];
            if n >= 2 {
                fns.push(("s".into(), Box::new(move |g| int(sgn(&cycle_type(g))))));
            }
            match n {
                3 => fns.push(("t".into(), Box::new(move |g| int(fix(&cycle_type(g)) - 1)))),
                4 => {
                    fns.push(("std".into(), Box::new(move |g| int(fix(&cycle_type(g)) - 1))));
                    fns.push((
                        "std*s".into(),
                        Box::new(move |g| {
                            let t = cycle_type(g);
                            int((fix(&t) - 1) * sgn(&t))
                        }),
                    ));
                    fns.push((
                        "t".into(),
                        Box::new(move |g| {
                            int(match cycle_type(g).as_slice() {
                                [1, 1, 1, 1] | [2, 2] => 2,
                                [1, 3] => -1,
                                _ => 0,
                            })
                        }),
                    ));
                }
                _ => {}
            }
            rows_from_fns(group, fns)
        }
        GroupKind::Quaternion => {
            // classes: {1}, {-1}, {±i}, {±j}, {±k}; element 2u+sign, u in 1,i,j,k
            let int = |v: i64| Cyclotomic::int(e, v);
            let lin = move |keep: usize| {
                move |g: usize| {
                    let u = g / 2;
                    int(if u == 0 || u == keep { 1 } else { -1 })
                }
            };
            let fns: Vec<(String, Box<dyn Fn(usize) -> Cyclotomic>)> = vec![
                ("1".into(), Box::new(move |_| int(1))),
                ("χ_i".into(), Box::new(lin(1))),
                ("χ_j".into(), Box::new(lin(2))),
                ("χ_k".into(), Box::new(lin(3))),
                (
                    "ψ".into(),
                    Box::new(move |g| int(match g {
                        0 => 2,
                        1 => -2,
                        _ => 0,
                    })),
                ),
            ];
            rows_from_fns(group, fns)
        }
        _ => {
            return Err(Error::Capability(format!(
                "no built-in character table for {}; supply one with a table file",
                group.label()
            )))
        }
    };
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = CharacterTable::builtin(&g).unwrap();
        let ints: Vec<Vec<i64>> =
            (0..3).map(|i| (0..3).map(|c| t.class_value(i, c).as_integer().unwrap()).collect()).collect();
        assert_eq!(ints, vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]]);
        assert_eq!(t.label(2), "t");
    }

    #[test]
    fn all_builtins_validate() {
        let groups = [
            FiniteGroup::cyclic(1).unwrap(),
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::abelian(&[2, 2]).unwrap(),
            FiniteGroup::abelian(&[2, 4]).unwrap(),
            FiniteGroup::dihedral(3).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::dihedral(5).unwrap(),
            FiniteGroup::dihedral(6).unwrap(),
            FiniteGroup::symmetric(1).unwrap(),
            FiniteGroup::symmetric(2).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::quaternion().unwrap(),
        ];
        for g in &groups {
            let t = CharacterTable::builtin(g).unwrap_or_else(|e| panic!("{}: {e}", g.label()));
            assert_eq!(t.num_irreps(), g.conjugacy_classes().len());
        }
        assert!(matches!(CharacterTable::builtin(&FiniteGroup::symmetric(5).unwrap()), Err(Error::Capability(_))));
    }

    #[test]
    fn z6_characters() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let t = CharacterTable::builtin(&g).unwrap();
        for j in 0..6 {
            for k in 0..6 {
                assert_eq!(t.value(j, k), &Cyclotomic::zeta_pow(6, (j * k) as i64));
            }
        }
    }

    #[test]
    fn q8_from_text() {
        let g = FiniteGroup::quaternion().unwrap();
        let text = "classes 5\n1 1 2 2 2\n1 1 1 1 1\n1 1 1 -1 -1\n1 1 -1 1 -1\n1 1 -1 -1 1\n2 -2 0 0 0\n";
        let t = CharacterTable::parse(&g, text).unwrap();
        assert_eq!(t.source(), TableSource::File);
        assert_eq!(t.dims(), &[1, 1, 1, 1, 2]);
        let bad = "classes 5\n1 1 2 2 2\n1 1 1 1 1\n1 1 1 -1 -1\n1 1 -1 1 -1\n1 1 -1 -1 1\n2 2 0 0 0\n";
        assert!(matches!(CharacterTable::parse(&g, bad), Err(Error::Validation(_))));
    }

    #[test]
    fn text_round_trip() {
        let g = FiniteGroup::dihedral(5).unwrap();
        let t = CharacterTable::builtin(&g).unwrap();
        let back = CharacterTable::parse(&g, &t.to_text()).unwrap();
        assert_eq!(back.to_text(), t.to_text());
    }
}
