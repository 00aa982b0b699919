//! Exact elements of Q/Z, the additive model of U(1).

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::integer::{gcd, lcm};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A rational number reduced modulo 1, stored in lowest terms with
/// `0 <= num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Angle {
    num: i64,
    den: i64,
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };
    pub const HALF: Angle = Angle { num: 1, den: 2 };

    /// `num/den` reduced mod 1. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = gcd(num, den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        Angle {
            num: i64::try_from(num).expect("angle numerator overflow"),
            den: i64::try_from(den).expect("angle denominator overflow"),
        }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Integer multiple `k * self`.
    pub fn times(self, k: i64) -> Self {
        Self::from_i128(self.num as i128 * k as i128, self.den as i128)
    }

    pub fn times_i128(self, k: i128) -> Self {
        let k = k.rem_euclid(self.den as i128);
        Self::from_i128(self.num as i128 * k, self.den as i128)
    }

    /// One particular solution `x` of `d * x = self`, namely `num / (d * den)`.
    pub fn div_int(self, d: i128) -> Self {
        assert!(d != 0, "division by zero");
        Self::from_i128(self.num as i128, self.den as i128 * d)
    }

    /// `(-1)^k * self`.
    pub fn signed(self, k: usize) -> Self {
        if k % 2 == 0 {
            self
        } else {
            -self
        }
    }
}

/// Least common multiple of the denominators of `angles` (1 when empty).
pub fn common_denominator<'a>(angles: impl IntoIterator<Item = &'a Angle>) -> i64 {
    angles.into_iter().fold(1, |acc, a| lcm(acc, a.den))
}

impl Default for Angle {
    fn default() -> Self {
        Angle::ZERO
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        if self.den == rhs.den {
            return Angle::from_i128(self.num as i128 + rhs.num as i128, self.den as i128);
        }
        let den = lcm(self.den as i128, rhs.den as i128);
        let num = self.num as i128 * (den / self.den as i128) + rhs.num as i128 * (den / rhs.den as i128);
        Angle::from_i128(num, den)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        if self.num == 0 {
            self
        } else {
            Angle { num: self.den - self.num, den: self.den }
        }
    }
}

impl AddAssign for Angle {
    fn add_assign(&mut self, rhs: Angle) {
        *self = *self + rhs;
    }
}

impl SubAssign for Angle {
    fn sub_assign(&mut self, rhs: Angle) {
        *self = *self - rhs;
    }
}

impl Sum for Angle {
    fn sum<I: Iterator<Item = Angle>>(iter: I) -> Angle {
        iter.fold(Angle::ZERO, Add::add)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::parse(0, format!("bad angle `{s}`"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Angle::new(p, q))
            }
            None => {
                let p: i64 = s.parse().map_err(|_| bad())?;
                Ok(Angle::new(p, 1))
            }
        }
    }
}
