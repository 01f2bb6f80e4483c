//! Exact integer linear algebra: rank, determinants, characteristic
//! polynomials and integer root extraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer matrix, row major.
pub type Matrix = Vec<Vec<i64>>;

/// Rank over the rationals by fraction-free elimination.
pub fn rank(m: &[Vec<i64>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let (rows, cols) = (a.len(), a[0].len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant of a square matrix (Bareiss).
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut prev = BigInt::one();
    let mut sign = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    prev * sign
}

pub fn transpose(m: &[Vec<i64>], cols: usize) -> Matrix {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// `a · b` for `a` of shape `r × k` and `b` of shape `k × c`.
pub fn mul(a: &[Vec<i64>], b: &[Vec<i64>], c: usize) -> Matrix {
    a.iter()
        .map(|row| {
            let mut out = vec![0i64; c];
            for (k, &v) in row.iter().enumerate() {
                if v != 0 {
                    for (o, &w) in out.iter_mut().zip(&b[k]) {
                        *o += v * w;
                    }
                }
            }
            out
        })
        .collect()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

// Deterministic Miller–Rabin for n < 3.2e9.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2, 3, 5, 7] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes_below(start: u64) -> impl Iterator<Item = u64> {
    (2..start).rev().filter(|&p| is_prime(p))
}

/// Characteristic polynomial `det(λI − M) mod p` by Hessenberg reduction,
/// coefficients indexed by degree.
fn char_poly_mod(m: &[Vec<i64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect()).collect();
    let sub = |a: u64, b: u64| if a >= b { a - b } else { a + p - b };
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else { continue };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = powmod(h[k + 1][k], p - 2, p);
        for i in k + 2..n {
            let f = mulmod(h[i][k], inv, p);
            if f == 0 {
                continue;
            }
            for j in 0..n {
                let v = mulmod(f, h[k + 1][j], p);
                h[i][j] = sub(h[i][j], v);
            }
            for row in h.iter_mut() {
                let v = mulmod(f, row[i], p);
                row[k + 1] = (row[k + 1] + v) % p;
            }
        }
    }
    // p_{i+1}(λ) = (λ − h_ii) p_i − Σ_{j<i} h_ji (Π_{l=j+1..i} h_{l,l−1}) p_j
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for i in 0..n {
        let mut next = vec![0u64; i + 2];
        for (d, &c) in polys[i].iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = sub(next[d], mulmod(h[i][i], c, p));
        }
        let mut prod = 1u64;
        for j in (0..i).rev() {
            prod = mulmod(prod, h[j + 1][j], p);
            if prod == 0 {
                break;
            }
            let f = mulmod(h[j][i], prod, p);
            for (d, &c) in polys[j].iter().enumerate() {
                next[d] = sub(next[d], mulmod(f, c, p));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Exact `det(λI − M)` with coefficients indexed by degree, computed modulo
/// enough primes to pin down every coefficient and lifted by CRT.
pub fn char_poly(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let rho = m.iter().map(|r| r.iter().map(|v| v.unsigned_abs() as f64).sum::<f64>()).fold(1.0f64, f64::max);
    // |c_{n−k}| ≤ C(n,k) ρ^k ≤ 2^n ρ^n
    let bits = n as f64 * (1.0 + rho.log2()) + 2.0;
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    for p in primes_below(1 << 31) {
        let r = char_poly_mod(m, p);
        let pb = BigInt::from(p);
        let minv = BigInt::from(powmod((&modulus % &pb).to_u64().unwrap(), p - 2, p));
        for (a, &rp) in acc.iter_mut().zip(&r) {
            let diff = (BigInt::from(rp) - &*a).mod_floor(&pb);
            let t = (diff * &minv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= pb;
        if modulus.bits() as f64 > bits {
            break;
        }
    }
    let half = &modulus >> 1;
    acc.into_iter().map(|a| if a > half { a - &modulus } else { a }).collect()
}

pub fn poly_eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divide by `(λ − r)`; `None` if `r` is not a root.
pub fn deflate(p: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let d = p.len() - 1;
    if d == 0 {
        return None;
    }
    let mut q = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for k in (0..=d).rev() {
        let v = &p[k] + &carry * r;
        if k == 0 {
            return v.is_zero().then_some(q);
        }
        q[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Integer roots with multiplicity (ascending) and the residual factor.
/// Candidates are the divisors of the trailing nonzero coefficient bounded by
/// `bound` in absolute value.
pub fn integer_roots(p: &[BigInt], bound: u64) -> (Vec<i64>, Vec<BigInt>) {
    let mut cur = p.to_vec();
    let mut roots = Vec::new();
    while cur.len() > 1 && cur[0].is_zero() {
        cur.remove(0);
        roots.push(0);
    }
    let mut cands = Vec::new();
    for r in 1..=bound as i64 {
        cands.push(r);
        cands.push(-r);
    }
    for r in cands {
        let rb = BigInt::from(r);
        loop {
            if cur.len() <= 1 || !(&cur[0] % &rb).is_zero() {
                break;
            }
            match deflate(&cur, &rb) {
                Some(q) => {
                    cur = q;
                    roots.push(r);
                }
                None => break,
            }
        }
    }
    roots.sort();
    (roots, cur)
}

/// No real root is negative: `p(−λ)` has no sign changes (Descartes).
pub fn no_negative_roots(p: &[BigInt]) -> bool {
    let signs: Vec<i32> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, c)| if c.is_positive() == (d % 2 == 0) { 1 } else { -1 })
        .collect();
    signs.windows(2).all(|w| w[0] == w[1])
}

pub fn format_poly(p: &[BigInt], var: &str) -> String {
    let mut parts = Vec::new();
    for (d, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match d {
            0 => mag.to_string(),
            _ => {
                let v = if d == 1 { var.to_string() } else { format!("{var}^{d}") };
                if mag.is_one() { v } else { format!("{mag}{v}") }
            }
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
        }
    }
    if parts.is_empty() { "0".into() } else { parts.join(" ") }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    // Faddeev–LeVerrier over the rationals.
    fn leverrier(m: &[Vec<i64>]) -> Vec<BigInt> {
        let n = m.len();
        let a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        let mut mk = vec![vec![BigRational::zero(); n]; n];
        for k in 1..=n {
            // M_k = A M_{k−1} + c_{n−k+1} I
            let mut next = vec![vec![BigRational::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = BigRational::zero();
                    for l in 0..n {
                        s += &a[i][l] * &mk[l][j];
                    }
                    next[i][j] = s;
                }
                next[i][i] += &c[n - k + 1];
            }
            mk = next;
            let mut tr = BigRational::zero();
            for i in 0..n {
                for l in 0..n {
                    tr += &a[i][l] * &mk[l][i];
                }
            }
            c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
        }
        c.into_iter().map(|v| v.to_integer()).collect()
    }

    #[test]
    fn small_char_polys() {
        let m = vec![vec![5, -3, -2], vec![-3, 4, -1], vec![-2, -1, 3]];
        assert_eq!(char_poly(&m), ints(&[0, 33, -12, 1]));
        assert_eq!(format_poly(&char_poly(&m), "λ"), "λ^3 - 12λ^2 + 33λ");
        let (roots, res) = integer_roots(&char_poly(&m), 10);
        assert_eq!(roots, vec![0]);
        assert_eq!(res, ints(&[33, -12, 1]));
        assert!(no_negative_roots(&res));
    }

    #[test]
    fn char_poly_matches_leverrier() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..9 {
            let m: Matrix = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..10)).collect()).collect();
            assert_eq!(char_poly(&m), leverrier(&m));
        }
    }

    #[test]
    fn rank_and_det() {
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]), 2);
        assert_eq!(det(&[vec![2, 1], vec![1, 3]]), BigInt::from(5));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
    }
}
