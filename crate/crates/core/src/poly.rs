//! Polynomials over F_2 modelling the mod-2 cohomology of elementary
//! abelian 2-groups, with the Bockstein `Sq^1` and explicit cocycle
//! representatives.

use std::collections::BTreeSet;
use std::fmt;

use crate::angle::Angle;
use crate::cochain::{cup_one_cochains, group_cochain, Cochain};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::point_groupoid;

/// Variable names, in generator order.
pub const VARIABLES: &str = "xyzwvuts";

/// A polynomial in `n` degree-one generators with F_2 coefficients, stored
/// as its set of exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly2Class {
    n: usize,
    terms: BTreeSet<Vec<u32>>,
}

impl Poly2Class {
    pub fn zero(n: usize) -> Self {
        Poly2Class { n, terms: BTreeSet::new() }
    }

    pub fn monomial(exponents: Vec<u32>) -> Self {
        let n = exponents.len();
        Poly2Class { n, terms: BTreeSet::from([exponents]) }
    }

    /// Parses monomials such as `x2yz` separated by `|`, e.g.
    /// `x2yz|xy2z|xyz2`, over `n` variables.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        if n > VARIABLES.len() {
            return Err(Error::usage(format!("at most {} variables are supported", VARIABLES.len())));
        }
        let mut p = Poly2Class::zero(n);
        for summand in text.split('|') {
            let summand = summand.trim();
            if summand.is_empty() {
                return Err(Error::parse(1, "empty summand in polynomial"));
            }
            let mut exps = vec![0u32; n];
            let chars: Vec<char> = summand.chars().filter(|c| !c.is_whitespace()).collect();
            let mut i = 0;
            while i < chars.len() {
                let c = chars[i];
                let var = VARIABLES
                    .find(c)
                    .ok_or_else(|| Error::parse(1, format!("unknown variable `{c}`")))?;
                if var >= n {
                    return Err(Error::usage(format!("variable `{c}` needs rank > {n}")));
                }
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let e: u32 = if start == i {
                    1
                } else {
                    chars[start..i].iter().collect::<String>().parse().map_err(|_| Error::parse(1, "bad exponent"))?
                };
                exps[var] += e;
            }
            p.toggle(exps);
        }
        Ok(p)
    }

    fn toggle(&mut self, exps: Vec<u32>) {
        if !self.terms.remove(&exps) {
            self.terms.insert(exps);
        }
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.iter()
    }

    /// Common degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.iter().map(|t| t.iter().sum::<u32>() as usize);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Sum over F_2.
    pub fn add(&self, other: &Poly2Class) -> Poly2Class {
        assert_eq!(self.n, other.n, "polynomials in different variable counts");
        let mut p = self.clone();
        for t in &other.terms {
            p.toggle(t.clone());
        }
        p
    }

    /// `Sq^1`: the derivation with `Sq^1(x_i) = x_i^2`.
    pub fn sq1(&self) -> Poly2Class {
        let mut out = Poly2Class::zero(self.n);
        for t in &self.terms {
            for i in 0..self.n {
                if t[i] % 2 == 1 {
                    let mut s = t.clone();
                    s[i] += 1;
                    out.toggle(s);
                }
            }
        }
        out
    }

    /// Some `m` with `Sq^1(m) = self`, found by linear algebra over F_2
    /// on the monomials of one degree lower.
    pub fn sq1_preimage(&self) -> Option<Poly2Class> {
        if self.is_zero() {
            return Some(Poly2Class::zero(self.n));
        }
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let sources = monomials(self.n, d - 1);
        let targets: Vec<Vec<u32>> = monomials(self.n, d);
        let col = |m: &Vec<u32>| targets.iter().position(|t| t == m).expect("same degree");
        // rows: target monomials; columns: source monomials (plus rhs)
        let mut rows: Vec<Vec<bool>> = vec![vec![false; sources.len() + 1]; targets.len()];
        for (j, s) in sources.iter().enumerate() {
            for t in Poly2Class::monomial(s.clone()).sq1().terms {
                rows[col(&t)][j] = true;
            }
        }
        for t in &self.terms {
            rows[col(t)][sources.len()] = true;
        }
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..sources.len() {
            if let Some(p) = (top..rows.len()).find(|&r| rows[r][c]) {
                rows.swap(top, p);
                for r in 0..rows.len() {
                    if r != top && rows[r][c] {
                        let pivot = rows[top].clone();
                        for (x, y) in rows[r].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                pivots.push(c);
                top += 1;
            }
        }
        if rows[top..].iter().any(|r| r[sources.len()]) {
            return None;
        }
        let mut m = Poly2Class::zero(self.n);
        for (r, &c) in pivots.iter().enumerate() {
            if rows[r][sources.len()] {
                m.toggle(sources[c].clone());
            }
        }
        Some(m)
    }
}

/// All exponent vectors of total degree `d` in `n` variables.
fn monomials(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, d as u32, &mut Vec::new(), &mut out);
    }
    out
}

impl fmt::Display for Poly2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars: Vec<char> = VARIABLES.chars().collect();
        // higher powers of earlier variables first
        for (k, t) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            if t.iter().all(|&e| e == 0) {
                write!(f, "1")?;
            }
            for (i, &e) in t.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "{}", vars[i])?,
                    _ => write!(f, "{}{e}", vars[i])?,
                }
            }
        }
        Ok(())
    }
}

/// Rank `n` of an elementary abelian 2-group whose element `g` has
/// coordinates given by the bits of its index, or an error otherwise.
pub fn elementary_two_rank(group: &FiniteGroup) -> Result<usize> {
    let order = group.order();
    if !order.is_power_of_two() || group.exponent() > 2 {
        return Err(Error::usage("polynomial classes need an elementary abelian 2-group"));
    }
    let n = order.trailing_zeros() as usize;
    for a in group.elements() {
        for b in group.elements() {
            if group.mul(a, b) != a ^ b {
                return Err(Error::usage("element indices are not bit vectors of coordinates"));
            }
        }
    }
    Ok(n)
}

/// The dual 1-cochain of the i-th generator, valued in `{0, 1/2}`.
pub fn dual_generator(group: &FiniteGroup, i: usize) -> Cochain {
    group_cochain(group, 1, |t| if t[0] >> i & 1 == 1 { Angle::HALF } else { Angle::ZERO })
}

/// Half of the cup-product representative of `p`: each monomial expands
/// into cup factors in variable order, repeated by multiplicity. The
/// result is a U(1) cocycle representing the Bockstein of `p`.
pub fn poly_to_cocycle(p: &Poly2Class, group: &FiniteGroup) -> Result<Cochain> {
    let n = elementary_two_rank(group)?;
    if p.variables() > n {
        return Err(Error::usage(format!("polynomial in {} variables on a group of rank {n}", p.variables())));
    }
    let d = p.degree().ok_or_else(|| Error::usage("polynomial must be nonzero and homogeneous"))?;
    let pt = point_groupoid(group);
    let duals: Vec<Cochain> = (0..n).map(|i| dual_generator(group, i)).collect();
    let mut total = Cochain::zero(&pt, d);
    for t in p.terms() {
        let factors: Vec<&Cochain> =
            t.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(&duals[i]).take(e as usize)).collect();
        total = &total + &cup_one_cochains(&pt, &factors)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::is_cocycle;

    #[test]
    fn parse_and_display() {
        let p = Poly2Class::parse("x2yz|xy2z|xyz2", 3).unwrap();
        assert_eq!(p.degree(), Some(4));
        assert_eq!(Poly2Class::parse(&p.to_string(), 3).unwrap(), p);
        assert!(Poly2Class::parse("xq", 3).is_err());
        assert!(Poly2Class::parse("w", 3).is_err());
        assert!(Poly2Class::parse("x||y", 3).is_err());
        // repeated summands cancel over F_2
        assert!(Poly2Class::parse("xy|xy", 2).unwrap().is_zero());
        assert_eq!(Poly2Class::parse("x|y2", 2).unwrap().degree(), None);
    }

    #[test]
    fn sq1_examples() {
        let xyz = Poly2Class::parse("xyz", 3).unwrap();
        assert_eq!(xyz.sq1(), Poly2Class::parse("x2yz|xy2z|xyz2", 3).unwrap());
        assert!(Poly2Class::parse("x2", 1).unwrap().sq1().is_zero());
        assert_eq!(Poly2Class::parse("xy2", 2).unwrap().sq1(), Poly2Class::parse("x2y2", 2).unwrap());
        // Sq^1 Sq^1 = 0
        let p = Poly2Class::parse("x3y|xyz|z2x", 3).unwrap();
        assert!(p.sq1().sq1().is_zero());
    }

    #[test]
    fn preimages() {
        for text in ["x4", "y4", "x2y2", "x4|y4|x2y2"] {
            let p = Poly2Class::parse(text, 2).unwrap();
            let m = p.sq1_preimage().unwrap();
            assert_eq!(m.sq1(), p, "{text}");
        }
        // x^3 y is not in the image of Sq^1
        assert!(Poly2Class::parse("x3y", 2).unwrap().sq1_preimage().is_none());
    }

    #[test]
    fn cocycle_representatives() {
        let e8 = FiniteGroup::elementary_abelian(2, 3);
        let pt = point_groupoid(&e8);
        for text in ["xyz", "x3", "xy2"] {
            let c = poly_to_cocycle(&Poly2Class::parse(text, 3).unwrap(), &e8).unwrap();
            assert!(is_cocycle(&pt, &c), "{text}");
        }
        let c = poly_to_cocycle(&Poly2Class::parse("xyz", 3).unwrap(), &e8).unwrap();
        assert_eq!(c.get(&[1, 2, 4]), Angle::HALF);
        assert_eq!(c.get(&[3, 3, 7]), Angle::HALF);
        assert_eq!(c.get(&[2, 2, 4]), Angle::ZERO);

        let e4 = FiniteGroup::elementary_abelian(2, 2);
        let x4 = poly_to_cocycle(&Poly2Class::parse("x4", 1).unwrap(), &e4).unwrap();
        assert!(is_cocycle(&point_groupoid(&e4), &x4));
        assert!(poly_to_cocycle(&Poly2Class::parse("xyz", 3).unwrap(), &e4).is_err());
        assert!(poly_to_cocycle(&Poly2Class::parse("x", 1).unwrap(), &FiniteGroup::cyclic(3)).is_err());
    }
}
