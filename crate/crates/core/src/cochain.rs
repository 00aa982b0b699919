//! U(1)-valued cochains on finite groupoids, written additively in Q/Z.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, GroupoidHom};

/// A degree-k cochain stored sparsely: absent tuples are zero.
///
/// Keys are composable arrow tuples (degree >= 1) or single objects
/// (degree 0), packed into a `u128` in mixed radix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    radix: usize,
    values: HashMap<u128, Angle>,
}

impl Cochain {
    /// The zero cochain of the given degree on `g`.
    pub fn zero(g: &FiniteGroupoid, degree: usize) -> Self {
        let radix = if degree == 0 { g.object_count() } else { g.arrow_count() }.max(1);
        let bits = (usize::BITS - radix.leading_zeros()) as usize;
        assert!(bits * degree.max(1) <= 128, "degree {degree} too large for packed keys");
        Cochain { degree, radix, values: HashMap::new() }
    }

    /// Tabulates `f` over the whole nerve of the requested degree.
    pub fn from_fn(g: &FiniteGroupoid, degree: usize, f: impl Fn(&[usize]) -> Angle + Sync) -> Self {
        let tuples: Vec<Vec<usize>> = g.nerve(degree).collect();
        let vals: Vec<(Vec<usize>, Angle)> = tuples.into_par_iter().map(|t| {
            let v = f(&t);
            (t, v)
        }).collect();
        let mut c = Cochain::zero(g, degree);
        for (t, v) in vals {
            c.set(&t, v);
        }
        c
    }

    /// Uniformly random values in `(1/denominator)Z/Z` on every tuple.
    pub fn random(g: &FiniteGroupoid, degree: usize, denominator: i64, rng: &mut impl Rng) -> Self {
        let mut c = Cochain::zero(g, degree);
        for t in g.nerve(degree) {
            c.set(&t, Angle::new(rng.gen_range(0..denominator), denominator));
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn key(&self, tuple: &[usize]) -> u128 {
        debug_assert_eq!(tuple.len(), self.degree.max(1), "tuple length does not match degree");
        tuple.iter().fold(0u128, |k, &a| {
            debug_assert!(a < self.radix);
            k * self.radix as u128 + a as u128
        })
    }

    fn unkey(&self, mut k: u128) -> Vec<usize> {
        let len = self.degree.max(1);
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = (k % self.radix as u128) as usize;
            k /= self.radix as u128;
        }
        t
    }

    #[inline]
    pub fn get(&self, tuple: &[usize]) -> Angle {
        self.values.get(&self.key(tuple)).copied().unwrap_or(Angle::ZERO)
    }

    pub fn set(&mut self, tuple: &[usize], value: Angle) {
        let k = self.key(tuple);
        if value.is_zero() {
            self.values.remove(&k);
        } else {
            self.values.insert(k, value);
        }
    }

    pub fn add_at(&mut self, tuple: &[usize], value: Angle) {
        let v = self.get(tuple) + value;
        self.set(tuple, v);
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    /// Nonzero entries in lexicographic tuple order.
    pub fn entries(&self) -> Vec<(Vec<usize>, Angle)> {
        let mut keys: Vec<u128> = self.values.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter().map(|k| (self.unkey(k), self.values[&k])).collect()
    }

    /// Lexicographically least tuple with a nonzero value.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Angle)> {
        self.values.iter().min_by_key(|(k, _)| **k).map(|(&k, &v)| (self.unkey(k), v))
    }

    /// Least common denominator of all values.
    pub fn denominator(&self) -> i64 {
        crate::angle::common_denominator(self.values.values())
    }

    fn check_compatible(&self, other: &Cochain) {
        assert_eq!(self.degree, other.degree, "cochain degrees differ");
        assert_eq!(self.radix, other.radix, "cochains live on different groupoids");
    }

    pub fn scaled(&self, k: i64) -> Cochain {
        let mut out = Cochain { degree: self.degree, radix: self.radix, values: HashMap::new() };
        for (&key, &v) in &self.values {
            let w = v.times(k);
            if !w.is_zero() {
                out.values.insert(key, w);
            }
        }
        out
    }
}

impl std::ops::Add<&Cochain> for &Cochain {
    type Output = Cochain;

    fn add(self, rhs: &Cochain) -> Cochain {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (&k, &v) in &rhs.values {
            let w = out.values.get(&k).copied().unwrap_or(Angle::ZERO) + v;
            if w.is_zero() {
                out.values.remove(&k);
            } else {
                out.values.insert(k, w);
            }
        }
        out
    }
}

impl std::ops::Neg for &Cochain {
    type Output = Cochain;

    fn neg(self) -> Cochain {
        self.scaled(-1)
    }
}

impl std::ops::Sub<&Cochain> for &Cochain {
    type Output = Cochain;

    fn sub(self, rhs: &Cochain) -> Cochain {
        self + &(-rhs)
    }
}

/// Value of `delta(c)` at a single (k+1)-tuple.
pub fn delta_at(g: &FiniteGroupoid, c: &Cochain, tuple: &[usize]) -> Angle {
    let k = c.degree();
    if k == 0 {
        let a = tuple[0];
        return c.get(&[g.target(a)]) - c.get(&[g.source(a)]);
    }
    let mut total = c.get(&tuple[1..]);
    let mut face = Vec::with_capacity(k);
    for i in 1..=k {
        face.clear();
        face.extend_from_slice(&tuple[..i - 1]);
        face.push(g.compose(tuple[i - 1], tuple[i]));
        face.extend_from_slice(&tuple[i + 1..]);
        total += c.get(&face).signed(i);
    }
    total + c.get(&tuple[..k]).signed(k + 1)
}

/// The coboundary `delta c`, a cochain of one degree higher.
pub fn delta(g: &FiniteGroupoid, c: &Cochain) -> Cochain {
    Cochain::from_fn(g, c.degree() + 1, |t| delta_at(g, c, t))
}

/// `h^* c` on the source groupoid of `h`.
pub fn pullback(h: &GroupoidHom, source: &FiniteGroupoid, c: &Cochain) -> Cochain {
    let k = c.degree();
    Cochain::from_fn(source, k, |t| c.get(&h.map_tuple(t, k)))
}

/// First tuple at which `delta c` is nonzero, if any.
pub fn cocycle_witness(g: &FiniteGroupoid, c: &Cochain) -> Option<Vec<usize>> {
    let tuples: Vec<Vec<usize>> = g.nerve(c.degree() + 1).collect();
    tuples.into_par_iter().find_first(|t| !delta_at(g, c, t).is_zero())
}

pub fn is_cocycle(g: &FiniteGroupoid, c: &Cochain) -> bool {
    cocycle_witness(g, c).is_none()
}

/// Cochain on a group, viewed on its one-object groupoid, as a function
/// of group elements. Degree 0 takes the empty tuple.
pub fn group_cochain(group: &FiniteGroup, degree: usize, f: impl Fn(&[usize]) -> Angle + Sync) -> Cochain {
    let pt = crate::groupoid::point_groupoid(group);
    if degree == 0 {
        return Cochain::from_fn(&pt, 0, |_| f(&[]));
    }
    Cochain::from_fn(&pt, degree, f)
}

/// Checks that a degree-1 cochain on `[*/G]` is a homomorphism into `{0, 1/2}`.
fn check_half_hom(pt: &FiniteGroupoid, f: &Cochain) -> Result<()> {
    if f.degree() != 1 {
        return Err(Error::usage("cup factors must be degree-1 cochains"));
    }
    for a in 0..pt.arrow_count() {
        let v = f.get(&[a]);
        if !(v.is_zero() || v == Angle::HALF) {
            return Err(Error::validation("cup factor takes a value outside {0, 1/2}", vec![a]));
        }
        for b in 0..pt.arrow_count() {
            if f.get(&[pt.compose(a, b)]) != v + f.get(&[b]) {
                return Err(Error::validation("cup factor is not a homomorphism", vec![a, b]));
            }
        }
    }
    Ok(())
}

/// Cup product of homomorphisms `G -> {0, 1/2}` on the one-object groupoid
/// `pt`: the value at `(g_1, ..., g_d)` is 1/2 exactly when every
/// `f_i(g_i)` is 1/2. Halving the mod-2 cup product keeps it a U(1) cocycle.
pub fn cup_one_cochains(pt: &FiniteGroupoid, factors: &[&Cochain]) -> Result<Cochain> {
    if pt.object_count() != 1 {
        return Err(Error::usage("cup products are defined here on one-object groupoids"));
    }
    for f in factors {
        check_half_hom(pt, f)?;
    }
    let d = factors.len();
    Ok(Cochain::from_fn(pt, d, |t| {
        if factors.iter().zip(t).all(|(f, &a)| f.get(&[a]) == Angle::HALF) {
            Angle::HALF
        } else {
            Angle::ZERO
        }
    }))
}

/// `beta(g, h) = tau(g, h) - tau(h, g)` for a 2-cocycle on an abelian group.
pub fn commutator_pairing(group: &FiniteGroup, tau: &Cochain) -> Result<Vec<Vec<Angle>>> {
    if !group.is_abelian() {
        return Err(Error::usage("commutator pairing needs an abelian group"));
    }
    if tau.degree() != 2 {
        return Err(Error::usage("commutator pairing needs a 2-cochain"));
    }
    Ok(group
        .elements()
        .map(|g| group.elements().map(|h| tau.get(&[g, h]) - tau.get(&[h, g])).collect())
        .collect())
}

/// Serialises as `degree k` followed by one `i_1 ... i_k p/q` line per
/// nonzero entry, in lexicographic order.
pub fn write_cochain(c: &Cochain) -> String {
    let mut s = format!("degree {}\n", c.degree());
    for (t, v) in c.entries() {
        for a in &t {
            write!(s, "{a} ").unwrap();
        }
        writeln!(s, "{v}").unwrap();
    }
    s
}

/// Parses the format of [`write_cochain`] against `g`. Blank lines and
/// lines starting with `#` are ignored.
pub fn parse_cochain(text: &str, g: &FiniteGroupoid) -> Result<Cochain> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty cochain file"))?;
    let degree: usize = header
        .strip_prefix("degree")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| Error::parse(hl, "expected `degree k`"))?;
    let mut c = Cochain::zero(g, degree);
    let bound = if degree == 0 { g.object_count() } else { g.arrow_count() };
    for (ln, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let want = degree.max(1) + 1;
        if parts.len() != want {
            return Err(Error::parse(ln, format!("expected {want} fields, found {}", parts.len())));
        }
        let tuple: Vec<usize> = parts[..want - 1]
            .iter()
            .map(|p| p.parse::<usize>().map_err(|e| Error::parse(ln, e.to_string())))
            .collect::<Result<_>>()?;
        if tuple.iter().any(|&a| a >= bound) {
            return Err(Error::parse(ln, "index out of range"));
        }
        if degree > 0 && !g.is_composable(&tuple) {
            return Err(Error::parse(ln, "arrows are not composable"));
        }
        let v: Angle = parts[want - 1].parse().map_err(|e: Error| Error::parse(ln, e.to_string()))?;
        c.add_at(&tuple, v);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{point_groupoid, SectorGroupoid};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degree_zero_delta_vanishes_on_point() {
        let pt = point_groupoid(&FiniteGroup::cyclic(3));
        let mut c = Cochain::zero(&pt, 0);
        c.set(&[0], Angle::new(1, 5));
        assert!(delta(&pt, &c).is_zero());
    }

    #[test]
    fn hand_delta_on_z2() {
        let pt = point_groupoid(&FiniteGroup::cyclic(2));
        let mut c = Cochain::zero(&pt, 1);
        c.set(&[1], Angle::new(1, 4));
        let d = delta(&pt, &c);
        assert_eq!(d.get(&[1, 1]), Angle::HALF);
        assert_eq!(d.get(&[0, 1]), Angle::ZERO);
    }

    #[test]
    fn delta_squared_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let pt = point_groupoid(&s3);
        let inertia = SectorGroupoid::new(&pt, 1).unwrap();
        for g in [&pt, inertia.groupoid()] {
            for k in 0..3 {
                let c = Cochain::random(g, k, 12, &mut rng);
                assert!(delta(g, &delta(g, &c)).is_zero(), "degree {k}");
            }
        }
    }

    #[test]
    fn pullback_along_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pt = point_groupoid(&FiniteGroup::cyclic(4));
        let c = Cochain::random(&pt, 2, 8, &mut rng);
        assert_eq!(pullback(&GroupoidHom::identity(&pt), &pt, &c), c);
    }

    #[test]
    fn cup_of_duals_on_e8() {
        let g = FiniteGroup::elementary_abelian(2, 3);
        let pt = point_groupoid(&g);
        let duals: Vec<Cochain> = (0..3)
            .map(|i| group_cochain(&g, 1, |t| if t[0] >> i & 1 == 1 { Angle::HALF } else { Angle::ZERO }))
            .collect();
        let xyz = cup_one_cochains(&pt, &[&duals[0], &duals[1], &duals[2]]).unwrap();
        assert_eq!(xyz.get(&[1, 2, 4]), Angle::HALF);
        assert_eq!(xyz.get(&[2, 2, 4]), Angle::ZERO);
        assert!(is_cocycle(&pt, &xyz));

        let mut bad = Cochain::zero(&pt, 1);
        bad.set(&[1], Angle::HALF);
        assert!(matches!(cup_one_cochains(&pt, &[&bad]), Err(Error::Validation { .. })));
    }

    #[test]
    fn random_two_cochain_on_s3_is_not_a_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pt = point_groupoid(&FiniteGroup::symmetric(3).unwrap());
        let c = Cochain::random(&pt, 2, 7, &mut rng);
        let w = cocycle_witness(&pt, &c).expect("random cochain should fail");
        assert!(!delta_at(&pt, &c, &w).is_zero());
    }

    #[test]
    fn commutator_pairing_of_coboundary_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = FiniteGroup::elementary_abelian(2, 2);
        let pt = point_groupoid(&g);
        let b = Cochain::random(&pt, 1, 6, &mut rng);
        let beta = commutator_pairing(&g, &delta(&pt, &b)).unwrap();
        assert!(beta.iter().flatten().all(|v| v.is_zero()));
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(commutator_pairing(&s3, &Cochain::zero(&point_groupoid(&s3), 2)).is_err());
    }

    #[test]
    fn file_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pt = point_groupoid(&FiniteGroup::cyclic(3));
        let c = Cochain::random(&pt, 3, 9, &mut rng);
        let text = write_cochain(&c);
        assert!(text.starts_with("degree 3\n"));
        assert_eq!(parse_cochain(&text, &pt).unwrap(), c);
        assert!(parse_cochain("degree 2\n0 5 1/2\n", &pt).is_err());
        assert!(parse_cochain("degree 2\n0 1\n", &pt).is_err());
        assert!(parse_cochain("", &pt).is_err());
    }
}
