//! Exact arithmetic in `Z[ζ_e]`, elements kept reduced modulo the e-th
//! cyclotomic polynomial so that equality is coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Coefficients of `Φ_e`, lowest degree first.
pub fn cyclotomic_poly(e: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&e) {
        return p.clone();
    }
    let mut p = vec![0i64; e + 1];
    p[0] = -1;
    p[e] = 1;
    for d in (1..e).filter(|d| e % d == 0) {
        p = poly_divide_exact(&p, &cyclotomic_poly(d));
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(e, p.clone());
    p
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    e: usize,
    c: Vec<i64>,
}

impl Cyclotomic {
    fn reduce(e: usize, mut c: Vec<i64>) -> Cyclotomic {
        let phi = cyclotomic_poly(e);
        let deg = phi.len() - 1;
        for i in (deg..c.len()).rev() {
            let lead = c[i];
            if lead != 0 {
                for (j, &p) in phi.iter().enumerate() {
                    c[i - deg + j] -= lead * p;
                }
            }
        }
        c.truncate(deg);
        c.resize(deg, 0);
        Cyclotomic { e, c }
    }

    /// `Σ a_i ζ_e^i` for any list of coefficients.
    pub fn from_power_sum(e: usize, coeffs: &[i64]) -> Cyclotomic {
        let mut c = vec![0i64; e.max(1)];
        for (i, &a) in coeffs.iter().enumerate() {
            c[i % e.max(1)] += a;
        }
        Self::reduce(e.max(1), c)
    }

    pub fn int(e: usize, v: i64) -> Cyclotomic {
        Self::from_power_sum(e, &[v])
    }

    /// `ζ_e^i`.
    pub fn zeta_pow(e: usize, i: i64) -> Cyclotomic {
        let mut c = vec![0i64; e];
        c[i.rem_euclid(e as i64) as usize] = 1;
        Self::reduce(e, c)
    }

    pub fn order(&self) -> usize {
        self.e
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    /// The same number in `Z[ζ_f]` for a multiple `f` of `e`.
    pub fn lift(&self, f: usize) -> Cyclotomic {
        assert!(f % self.e == 0, "cannot lift Z[ζ_{}] into Z[ζ_{f}]", self.e);
        let step = f / self.e;
        let mut c = vec![0i64; f];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * step] += a;
        }
        Self::reduce(f, c)
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if self.e == other.e {
            (self.clone(), other.clone())
        } else {
            let f = self.e.lcm(&other.e);
            (self.lift(f), other.lift(f))
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(other);
        Cyclotomic { e: a.e, c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic { e: self.e, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(other);
        let mut c = vec![0i64; (a.c.len() + b.c.len()).max(1)];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Self::reduce(a.e, c)
    }

    pub fn scale(&self, k: i64) -> Cyclotomic {
        Cyclotomic { e: self.e, c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Complex conjugation, `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> Cyclotomic {
        let mut c = vec![0i64; self.e];
        for (i, &a) in self.c.iter().enumerate() {
            c[(self.e - i) % self.e] += a;
        }
        Self::reduce(self.e, c)
    }

    pub fn as_integer(&self) -> Option<i64> {
        if self.c.iter().skip(1).all(|&x| x == 0) {
            Some(self.c.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Dividing every coefficient by `d`, when exact.
    pub fn div_exact(&self, d: i64) -> Option<Cyclotomic> {
        if self.c.iter().all(|x| x % d == 0) {
            Some(Cyclotomic { e: self.e, c: self.c.iter().map(|x| x / d).collect() })
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let w = std::f64::consts::TAU / self.e as f64;
        self.c.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, &a)| {
            (re + a as f64 * (w * i as f64).cos(), im + a as f64 * (w * i as f64).sin())
        })
    }

    /// Parses `a0+a1*z^1+...` where `z = ζ_e`; terms may repeat powers.
    pub fn parse(e: usize, s: &str) -> Result<Cyclotomic> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty character value".into()));
        }
        let mut coeffs = vec![0i64; e];
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > start && !s[..i].ends_with('^') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(t)),
            };
            let bad = || Error::Parse(format!("bad term '{t}' in '{s}'"));
            let (coef, pow) = if let Some(idx) = body.find('z') {
                let c = body[..idx].trim_end_matches('*');
                let c: i64 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
                let rest = &body[idx + 1..];
                let p: i64 = if rest.is_empty() { 1 } else { rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())? };
                (c, p)
            } else {
                (body.parse::<i64>().map_err(|_| bad())?, 0)
            };
            coeffs[p_mod(pow, e)] += sign * coef;
        }
        Ok(Self::from_power_sum(e, &coeffs))
    }
}

fn p_mod(p: i64, e: usize) -> usize {
    p.rem_euclid(e as i64) as usize
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 { "-" } else if first { "" } else { "+" };
            let mag = a.abs();
            match i {
                0 => write!(f, "{sign}{mag}")?,
                _ if mag == 1 => write!(f, "{sign}z^{i}")?,
                _ => write!(f, "{sign}{mag}*z^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(30).len() - 1, 8);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for e in [2, 3, 4, 6, 12] {
            let s = (0..e).fold(Cyclotomic::int(e, 0), |acc, i| acc.add(&Cyclotomic::zeta_pow(e, i as i64)));
            assert!(s.is_zero(), "e={e}");
        }
    }

    #[test]
    fn arithmetic() {
        let z = Cyclotomic::zeta_pow(6, 1);
        assert_eq!(z.mul(&z.conj()).as_integer(), Some(1));
        let z3 = Cyclotomic::zeta_pow(3, 1);
        // ζ_3 = ζ_6^2
        assert_eq!(z3.lift(6), z.mul(&z));
        assert_eq!(z3.add(&z).order(), 6);
        let t = z3.add(&z3.conj());
        assert_eq!(t.as_integer(), Some(-1));
        let (re, im) = z.to_complex();
        assert!((re - 0.5).abs() < 1e-12 && (im - 0.75f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn parsing() {
        let v = Cyclotomic::parse(3, "z+z^2").unwrap();
        assert_eq!(v.as_integer(), Some(-1));
        let w = Cyclotomic::parse(4, "-2+3*z^1-z^3").unwrap();
        assert_eq!(w, Cyclotomic::from_power_sum(4, &[-2, 3, 0, -1]));
        assert_eq!(Cyclotomic::parse(4, &w.to_string()).unwrap(), w);
        assert!(Cyclotomic::parse(4, "2*q").is_err());
    }
}
