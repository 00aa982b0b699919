//! Projective representation theory over a fixed 2-cocycle on a finite
//! group: regularity, ranks, the twisted group algebra and explicit
//! irreducible projective representations.

use std::collections::{BTreeMap, HashMap};

use num::{BigRational, One};

use crate::angle::Angle;
use crate::cochain::{commutator_pairing, group_cochain, Cochain};
use crate::cyclotomic::{self, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::groupoid::point_groupoid;
use crate::matrix::Matrix;
use crate::solve::coboundary_solve;

/// A 2-cocycle on a finite group as a dense `|G| x |G|` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCocycleGroup {
    group: FiniteGroup,
    values: Vec<Angle>,
}

impl TwoCocycleGroup {
    /// Wraps a degree-2 cochain on `[*/G]`, checking the cocycle identity.
    pub fn new(group: &FiniteGroup, tau: &Cochain) -> Result<Self> {
        if tau.degree() != 2 {
            return Err(Error::usage("a 2-cocycle needs a degree-2 cochain"));
        }
        let n = group.order();
        let values: Vec<Angle> = (0..n * n).map(|i| tau.get(&[i / n, i % n])).collect();
        let tc = TwoCocycleGroup { group: group.clone(), values };
        tc.check()?;
        Ok(tc)
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        let n = group.order();
        TwoCocycleGroup { group: group.clone(), values: vec![Angle::ZERO; n * n] }
    }

    fn check(&self) -> Result<()> {
        let g = &self.group;
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    let d = self.get(b, c) - self.get(g.mul(a, b), c) + self.get(a, g.mul(b, c)) - self.get(a, b);
                    if !d.is_zero() {
                        return Err(Error::validation("2-cocycle identity fails", vec![a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Angle {
        self.values[a * self.group.order() + b]
    }

    pub fn is_normalized(&self) -> bool {
        self.group.elements().all(|g| self.get(0, g).is_zero() && self.get(g, 0).is_zero())
    }

    pub fn to_cochain(&self) -> Cochain {
        group_cochain(&self.group, 2, |t| self.get(t[0], t[1]))
    }

    /// The cocycle shifted by `delta b` for a 1-cochain `b` given as a table.
    pub fn shifted(&self, b: &[Angle]) -> TwoCocycleGroup {
        let g = &self.group;
        let n = g.order();
        let values = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                self.values[i] - (b[y] - b[g.mul(x, y)] + b[x])
            })
            .collect();
        TwoCocycleGroup { group: g.clone(), values }
    }
}

/// Shifts a 2-cocycle by an explicit coboundary so that it vanishes
/// whenever an argument is the identity. Returns the shifted cocycle and
/// the 1-cochain `rho` with `tau - delta rho` normalised.
///
/// The cocycle identity forces `tau(1, g) = tau(g, 1) = tau(1, 1)`, so
/// `rho` is `tau(1, 1)` at the identity and zero elsewhere.
pub fn normalize_cocycle(group: &FiniteGroup, tau: &Cochain) -> Result<(TwoCocycleGroup, Cochain)> {
    let raw = TwoCocycleGroup::new(group, tau)?;
    let mut rho = vec![Angle::ZERO; group.order()];
    rho[0] = raw.get(0, 0);
    let shifted = raw.shifted(&rho);
    let rho_c = group_cochain(group, 1, |t| rho[t[0]]);
    Ok((shifted, rho_c))
}

/// Whether `g` is regular: `tau(g, h) = tau(h, g)` for every `h` commuting with `g`.
pub fn is_regular(tau: &TwoCocycleGroup, g: usize) -> bool {
    let grp = tau.group();
    grp.elements().filter(|&h| grp.commute(g, h)).all(|h| tau.get(g, h) == tau.get(h, g))
}

/// Representatives of the conjugacy classes made of regular elements.
/// Regularity is checked on every member of each class, and a class that
/// is only partly regular is reported as an error.
pub fn tau_regular_classes(tau: &TwoCocycleGroup) -> Result<Vec<usize>> {
    if !tau.is_normalized() {
        return Err(Error::usage("regularity needs a normalised cocycle"));
    }
    let classes = tau.group().conjugacy_classes();
    let mut out = Vec::new();
    for class in &classes.classes {
        let flags: Vec<bool> = class.iter().map(|&g| is_regular(tau, g)).collect();
        if flags.iter().any(|&f| f != flags[0]) {
            return Err(Error::validation("regularity is not constant on a conjugacy class", class.clone()));
        }
        if flags[0] {
            out.push(class[0]);
        }
    }
    Ok(out)
}

/// Number of irreducible projective representations with cocycle `tau`.
pub fn twisted_rank(tau: &TwoCocycleGroup) -> Result<usize> {
    Ok(tau_regular_classes(tau)?.len())
}

/// The twisted group algebra with `e_g e_h = exp(2 pi i tau(g, h)) e_{gh}`.
#[derive(Debug, Clone)]
pub struct TwistedAlgebra {
    cocycle: TwoCocycleGroup,
}

impl TwistedAlgebra {
    pub fn new(cocycle: &TwoCocycleGroup) -> Self {
        TwistedAlgebra { cocycle: cocycle.clone() }
    }

    pub fn cocycle(&self) -> &TwoCocycleGroup {
        &self.cocycle
    }

    /// `e_g e_h` as `(gh, scalar)`.
    pub fn basis_product(&self, g: usize, h: usize) -> (usize, Cyclotomic) {
        (self.cocycle.group().mul(g, h), Cyclotomic::phase(self.cocycle.get(g, h)))
    }

    /// Dimension of the centre, by solving `z e_h = e_h z` for every `h`
    /// over the cyclotomic field.
    pub fn center_dimension(&self) -> usize {
        let g = self.cocycle.group();
        let n = g.order();
        let mut rows = Vec::new();
        for h in g.elements() {
            let hinv = g.inv(h);
            for m in g.elements() {
                // coefficient of e_m in z e_h - e_h z
                let (k1, k2) = (g.mul(m, hinv), g.mul(hinv, m));
                let mut row = vec![Cyclotomic::zero(); n];
                row[k1] = &row[k1] + &Cyclotomic::phase(self.cocycle.get(k1, h));
                row[k2] = &row[k2] - &Cyclotomic::phase(self.cocycle.get(h, k2));
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        n - cyclotomic::rank(&rows)
    }

    /// The left regular module: `e_g` acts on the basis `e_x` by the
    /// structure constants.
    pub fn regular_representation(&self) -> ProjectiveRep {
        let g = self.cocycle.group();
        let n = g.order();
        let matrices = g
            .elements()
            .map(|z| {
                let mut m = Matrix::zeros(n, n);
                for x in g.elements() {
                    let (zx, c) = self.basis_product(z, x);
                    m.set(zx, x, c);
                }
                m
            })
            .collect();
        ProjectiveRep { matrices }
    }
}

/// A projective representation: matrices with `R(a) R(b) = exp(2 pi i tau(a, b)) R(ab)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveRep {
    pub matrices: Vec<Matrix>,
}

impl ProjectiveRep {
    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn character(&self) -> Vec<Cyclotomic> {
        self.matrices.iter().map(Matrix::trace).collect()
    }

    /// First pair `(a, b)` violating the multiplication rule, if any.
    pub fn violation(&self, tau: &TwoCocycleGroup) -> Option<(usize, usize)> {
        let g = tau.group();
        for a in g.elements() {
            for b in g.elements() {
                let lhs = self.matrices[a].mul(&self.matrices[b]);
                let rhs = self.matrices[g.mul(a, b)].scale(&Cyclotomic::phase(tau.get(a, b)));
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// `<chi, psi> = (1/|G|) sum chi(g) conj(psi(g))`.
pub fn character_inner(chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
    let s: Cyclotomic = chi.iter().zip(psi).map(|(a, b)| a * &b.conj()).sum();
    let n = BigRational::from_integer(chi.len().into());
    &s * &Cyclotomic::from_rational(BigRational::one() / n)
}

/// Restriction of `tau` to a subgroup, re-indexed as in [`FiniteGroup::restrict`].
pub fn restrict_cocycle(tau: &TwoCocycleGroup, sub: &Subgroup) -> TwoCocycleGroup {
    let h = tau.group().restrict(sub);
    let m = sub.order();
    let values = (0..m * m).map(|i| tau.get(sub.members[i / m], sub.members[i % m])).collect();
    TwoCocycleGroup { group: h, values }
}

/// Induces the one-dimensional projective character `lambda` of the
/// subgroup `sub` (a 1-cochain with `delta lambda = tau|_H`) up to the
/// whole group, using left coset representatives.
fn induce(tau: &TwoCocycleGroup, sub: &Subgroup, lambda: &[Angle]) -> ProjectiveRep {
    let g = tau.group();
    let mut reps: Vec<usize> = Vec::new();
    let mut coset_of = vec![usize::MAX; g.order()];
    for t in g.elements() {
        if coset_of[t] != usize::MAX {
            continue;
        }
        for &h in &sub.members {
            coset_of[g.mul(t, h)] = reps.len();
        }
        reps.push(t);
    }
    let pos: HashMap<usize, usize> = sub.members.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let m = reps.len();
    let matrices = g
        .elements()
        .map(|z| {
            let mut mat = Matrix::zeros(m, m);
            for (i, &t) in reps.iter().enumerate() {
                let zt = g.mul(z, t);
                let j = coset_of[zt];
                let tj = reps[j];
                let h = g.mul(g.inv(tj), zt);
                let phase = tau.get(z, t) - tau.get(tj, h) + lambda[pos[&h]];
                mat.set(j, i, Cyclotomic::phase(phase));
            }
            mat
        })
        .collect();
    ProjectiveRep { matrices }
}

/// A complete list of pairwise inequivalent irreducible projective
/// representations for a normalised `tau`, built by inducing
/// one-dimensional projective characters of subgroups. Errors if the
/// search cannot reach the twisted rank, which would mean some
/// irreducible is not monomial.
pub fn projective_irreps(tau: &TwoCocycleGroup) -> Result<Vec<ProjectiveRep>> {
    let target = twisted_rank(tau)?;
    let g = tau.group();
    let mut found: Vec<(ProjectiveRep, Vec<Cyclotomic>)> = Vec::new();
    let one = Cyclotomic::one();
    let mut subgroups = g.all_subgroups();
    // small index first keeps the search short
    subgroups.sort_by_key(|s| std::cmp::Reverse(s.order()));
    'outer: for sub in &subgroups {
        let restricted = restrict_cocycle(tau, sub);
        let h = restricted.group();
        let pt = point_groupoid(h);
        let Some(base) = coboundary_solve(&pt, &restricted.to_cochain())? else { continue };
        let base: Vec<Angle> = h.elements().map(|x| base.get(&[x])).collect();
        let e = h.exponent();
        for chi in h.homs_to_cyclic(e) {
            let lambda: Vec<Angle> = base.iter().zip(&chi).map(|(&b, &c)| b + Angle::new(c as i64, e as i64)).collect();
            let rep = induce(tau, sub, &lambda);
            let ch = rep.character();
            if character_inner(&ch, &ch) != one {
                continue;
            }
            if found.iter().any(|(_, other)| !character_inner(&ch, other).is_zero()) {
                continue;
            }
            found.push((rep, ch));
            if found.len() == target {
                break 'outer;
            }
        }
    }
    if found.len() != target {
        return Err(Error::NotInSpan(format!(
            "found {} of {target} irreducible projective representations by induction",
            found.len()
        )));
    }
    Ok(found.into_iter().map(|(r, _)| r).collect())
}

/// One representative 2-cocycle per class in `H^2(G, U(1))` for abelian
/// `G`, built from products of characters `chi(a) psi(b) / e` and told
/// apart by their commutator pairings, which classify such classes.
pub fn abelian_cocycle_classes(group: &FiniteGroup) -> Result<Vec<TwoCocycleGroup>> {
    if !group.is_abelian() {
        return Err(Error::usage("class enumeration is implemented for abelian groups"));
    }
    let e = group.exponent();
    let homs = group.homs_to_cyclic(e);
    let pt = point_groupoid(group);
    let mut generators = Vec::new();
    for chi in &homs {
        for psi in &homs {
            generators.push(group_cochain(group, 2, |t| Angle::new((chi[t[0]] * psi[t[1]]) as i64, e as i64)));
        }
    }
    let mut seen: BTreeMap<Vec<Angle>, Cochain> = BTreeMap::new();
    let zero = Cochain::zero(&pt, 2);
    seen.insert(commutator_pairing(group, &zero)?.concat(), zero);
    let mut frontier: Vec<Cochain> = vec![seen.values().next().unwrap().clone()];
    while let Some(c) = frontier.pop() {
        for gen in &generators {
            let next = &c + gen;
            let key = commutator_pairing(group, &next)?.concat();
            if let std::collections::btree_map::Entry::Vacant(v) = seen.entry(key) {
                v.insert(next.clone());
                frontier.push(next);
            }
        }
    }
    seen.values().map(|c| TwoCocycleGroup::new(group, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::delta;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn schur_class() -> (FiniteGroup, TwoCocycleGroup) {
        let g = FiniteGroup::elementary_abelian(2, 2);
        let c = group_cochain(&g, 2, |t| if t[0] & 1 == 1 && t[1] & 2 == 2 { Angle::HALF } else { Angle::ZERO });
        let tc = TwoCocycleGroup::new(&g, &c).unwrap();
        (g, tc)
    }

    #[test]
    fn trivial_cocycle_counts_classes() {
        for g in [FiniteGroup::symmetric(3).unwrap(), FiniteGroup::dihedral(4).unwrap(), FiniteGroup::cyclic(5)] {
            let t = TwoCocycleGroup::trivial(&g);
            assert_eq!(twisted_rank(&t).unwrap(), g.conjugacy_classes().len());
            assert_eq!(TwistedAlgebra::new(&t).center_dimension(), g.conjugacy_classes().len());
        }
    }

    #[test]
    fn schur_class_on_klein_four() {
        let (_, tc) = schur_class();
        assert_eq!(tau_regular_classes(&tc).unwrap(), vec![0]);
        assert_eq!(TwistedAlgebra::new(&tc).center_dimension(), 1);
        let irreps = projective_irreps(&tc).unwrap();
        assert_eq!(irreps.len(), 1);
        assert_eq!(irreps[0].dim(), 2);
        assert!(irreps[0].violation(&tc).is_none());
    }

    #[test]
    fn normalisation() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let g = FiniteGroup::symmetric(3).unwrap();
        let pt = point_groupoid(&g);
        let b = Cochain::random(&pt, 1, 6, &mut rng);
        let db = delta(&pt, &b);
        let (n, rho) = normalize_cocycle(&g, &db).unwrap();
        assert!(n.is_normalized());
        assert_eq!(n.to_cochain(), &db - &delta(&pt, &rho));

        let (_, tc) = schur_class();
        let (same, rho) = normalize_cocycle(tc.group(), &tc.to_cochain()).unwrap();
        assert_eq!(same, tc);
        assert!(rho.is_zero());

        let bad = Cochain::random(&pt, 2, 5, &mut rng);
        assert!(matches!(normalize_cocycle(&g, &bad), Err(Error::Validation { .. })));
    }

    #[test]
    fn rank_is_a_class_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let (g, tc) = schur_class();
        let pt = point_groupoid(&g);
        for _ in 0..5 {
            let b = Cochain::random(&pt, 1, 4, &mut rng);
            let shifted = &tc.to_cochain() + &delta(&pt, &b);
            let (n, _) = normalize_cocycle(&g, &shifted).unwrap();
            assert_eq!(twisted_rank(&n).unwrap(), 1);
        }
    }

    #[test]
    fn classes_of_small_abelian_groups() {
        let cases = [
            (FiniteGroup::elementary_abelian(2, 2), 2),
            (FiniteGroup::elementary_abelian(2, 3), 8),
            (FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2)), 2),
            (FiniteGroup::cyclic(6), 1),
        ];
        for (g, count) in cases {
            let classes = abelian_cocycle_classes(&g).unwrap();
            assert_eq!(classes.len(), count);
            for tc in &classes {
                let (n, _) = normalize_cocycle(&g, &tc.to_cochain()).unwrap();
                let rank = twisted_rank(&n).unwrap();
                assert_eq!(rank, TwistedAlgebra::new(&n).center_dimension());
                let irreps = projective_irreps(&n).unwrap();
                let d = irreps[0].dim();
                assert!(irreps.iter().all(|r| r.dim() == d));
                assert_eq!(rank * d * d, g.order());
            }
        }
    }

    #[test]
    fn regular_representation_is_projective() {
        let (_, tc) = schur_class();
        let reg = TwistedAlgebra::new(&tc).regular_representation();
        assert!(reg.violation(&tc).is_none());
        let ch = reg.character();
        assert_eq!(ch[0], Cyclotomic::from_int(4));
        assert!(ch[1..].iter().all(Cyclotomic::is_zero));
    }

    #[test]
    fn ordinary_irreps_of_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let irreps = projective_irreps(&TwoCocycleGroup::trivial(&g)).unwrap();
        let mut dims: Vec<usize> = irreps.iter().map(ProjectiveRep::dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2]);
    }
}
