//! Exact arithmetic in cyclotomic fields `Q(zeta_N) = Q[x]/Phi_N(x)`.
//!
//! Elements carry their own conductor; binary operations lift both sides
//! to the least common multiple first.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num::integer::lcm;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::angle::Angle;

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            let t = &c * y;
            r[shift + i] -= t;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn int_poly(coeffs: &[i64]) -> Poly {
    let mut p: Poly = coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
    trim(&mut p);
    p
}

/// The N-th cyclotomic polynomial, by dividing `x^N - 1` by `Phi_d` for
/// the proper divisors `d` of `N`.
pub fn cyclotomic_polynomial(n: u64) -> Poly {
    static CACHE: OnceLock<Mutex<HashMap<u64, Poly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "conductor must be positive");
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[0] = -1;
    coeffs[n as usize] = 1;
    let mut p = int_poly(&coeffs);
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = poly_divrem(&p, &cyclotomic_polynomial(d));
        debug_assert!(r.is_empty());
        p = q;
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// An element of `Q(zeta_N)` in the power basis `1, x, ..., x^(deg Phi_N - 1)`.
#[derive(Clone)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Poly,
}

impl Cyclotomic {
    fn reduced(n: u64, p: Poly) -> Self {
        let phi = cyclotomic_polynomial(n);
        let (_, r) = poly_divrem(&p, &phi);
        Cyclotomic { n, coeffs: r }
    }

    pub fn zero() -> Self {
        Cyclotomic { n: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Cyclotomic { n: 1, coeffs: int_poly(&[k]) }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut coeffs = vec![q];
        trim(&mut coeffs);
        Cyclotomic { n: 1, coeffs }
    }

    /// `zeta_N^k` with `zeta_N = exp(2 pi i / N)`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Self::reduced(n, p)
    }

    /// `exp(2 pi i q)` for an angle `q`.
    pub fn phase(q: Angle) -> Self {
        Self::root_of_unity(q.denom() as u64, q.numer())
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Re-expresses the element in `Q(zeta_m)` for a multiple `m` of the
    /// conductor.
    pub fn lift(&self, m: u64) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "lift target must be a multiple of the conductor");
        let step = (m / self.n) as usize;
        let mut p = vec![BigRational::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        trim(&mut p);
        Self::reduced(m, p)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.n, other.n);
        (self.lift(m), other.lift(m))
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// The integer value, if the element lies in Z.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut p = vec![BigRational::zero(); n.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[(n - i % n) % n] += c;
        }
        trim(&mut p);
        Self::reduced(self.n, p)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi = cyclotomic_polynomial(self.n);
        // invariant: s * self == r  (mod phi)
        let (mut r0, mut r1) = (phi.clone(), self.coeffs.clone());
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s2 = s0.clone();
            if s2.len() < qs.len() {
                s2.resize(qs.len(), BigRational::zero());
            }
            for (i, c) in qs.into_iter().enumerate() {
                s2[i] -= c;
            }
            trim(&mut s2);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Phi_N is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let inv: Poly = s0.into_iter().map(|x| x / &c).collect();
        Some(Self::reduced(self.n, inv))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = if self.n == rhs.n { (self.clone(), rhs.clone()) } else { self.aligned(rhs) };
        if a.coeffs.len() < b.coeffs.len() {
            a.coeffs.resize(b.coeffs.len(), BigRational::zero());
        }
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        trim(&mut a.coeffs);
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        let (a, b) = if self.n == rhs.n { (self.clone(), rhs.clone()) } else { self.aligned(rhs) };
        Cyclotomic::reduced(a.n, poly_mul(&a.coeffs, &b.coeffs))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            let sep = if coef.is_empty() || i == 0 { "" } else { "*" };
            let var = match i {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{i}", self.n),
            };
            write!(f, "{sign}{coef}{sep}{var}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn common_conductor<'a>(entries: impl IntoIterator<Item = &'a Cyclotomic>) -> u64 {
    entries.into_iter().fold(1, |m, c| lcm(m, c.n))
}

/// Row-reduces in place, returning the pivot columns.
fn row_reduce(rows: &mut [Vec<Cyclotomic>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        let Some(p) = (top..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(top, p);
        let inv = rows[top][c].inverse().expect("nonzero pivot");
        let scaled: Vec<Cyclotomic> = rows[top].iter().map(|x| x * &inv).collect();
        rows[top] = scaled;
        for r in 0..rows.len() {
            if r != top && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for j in c..rows[r].len() {
                    let t = &f * &rows[top][j];
                    rows[r][j] = &rows[r][j] - &t;
                }
            }
        }
        pivots.push(c);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    pivots
}

fn lifted(rows: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let m = common_conductor(rows.iter().flatten());
    rows.iter().map(|r| r.iter().map(|x| x.lift(m)).collect()).collect()
}

/// Rank of a matrix over the cyclotomic field.
pub fn rank(rows: &[Vec<Cyclotomic>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = lifted(rows);
    row_reduce(&mut m, cols).len()
}

/// Some `x` with `A x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<Cyclotomic>], b: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
    let cols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Cyclotomic>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut m = lifted(&aug);
    let pivots = row_reduce(&mut m, cols);
    let rank = pivots.len();
    if m[rank..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Cyclotomic::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> Cyclotomic {
        Cyclotomic::root_of_unity(4, 1)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), int_poly(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), int_poly(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), int_poly(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), int_poly(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(8).len(), 5);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(&i() * &i(), Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::phase(Angle::HALF), Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::phase(Angle::ZERO), Cyclotomic::one());
        let w = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(&(&Cyclotomic::one() + &w) + &w.pow(2), Cyclotomic::zero());
        assert_eq!(Cyclotomic::root_of_unity(8, 2), i());
        // zeta_12^3 = i across conductors
        assert_eq!(Cyclotomic::root_of_unity(12, 3), i());
        assert_eq!(&Cyclotomic::root_of_unity(3, 1) * &Cyclotomic::root_of_unity(4, 1), Cyclotomic::root_of_unity(12, 7));
    }

    #[test]
    fn inverse_and_conjugate() {
        let a = &Cyclotomic::from_int(2) + &Cyclotomic::root_of_unity(5, 2);
        let b = a.inverse().unwrap();
        assert_eq!(&a * &b, Cyclotomic::one());
        assert_eq!(i().conj(), -&i());
        let norm = &a * &a.conj();
        assert_eq!(norm.conj(), norm);
        assert!(Cyclotomic::zero().inverse().is_none());
    }

    #[test]
    fn rationality() {
        let s = &Cyclotomic::root_of_unity(6, 1) + &Cyclotomic::root_of_unity(6, 5);
        assert_eq!(s.to_integer(), Some(BigInt::from(1)));
        assert_eq!(i().to_rational(), None);
    }

    #[test]
    fn linear_algebra() {
        let one = Cyclotomic::one();
        let a = vec![vec![one.clone(), i()], vec![i(), Cyclotomic::from_int(-1)]];
        assert_eq!(rank(&a), 1);
        let x = solve(&a, &[one.clone(), i()]).unwrap();
        assert_eq!(&x[0] + &(&i() * &x[1]), one);
        assert!(solve(&a, &[one.clone(), one.clone()]).is_none());
    }
}
