//! Pointwise sweeps of the cochain identities, and random cocycles to feed
//! them. Every sweep returns the first failing tuple in nerve order, so the
//! result does not depend on how the work is scheduled.

use rand::Rng;
use rayon::prelude::*;

use crate::angle::Angle;
use crate::cochain::{delta, group_cochain, pullback, Cochain};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::groupoid::{evaluation_hom, fibered_product, point_groupoid, unit_embedding, Evaluation, FiniteGroupoid, SectorGroupoid};
use crate::poly::{elementary_two_rank, poly_to_cocycle, Poly2Class};
use crate::transgression::{mu, theta_at};

/// Pointwise form of `theta`, swappable so that a broken variant can be
/// shown to fail.
pub type ThetaAt = dyn Fn(&FiniteGroupoid, &Cochain, usize, &[usize]) -> Angle + Sync;

/// The groupoids a sweep needs for a finite group.
#[derive(Debug, Clone)]
pub struct Sectors {
    pub group: FiniteGroup,
    pub base: FiniteGroupoid,
    pub inertia: SectorGroupoid,
    pub two: SectorGroupoid,
}

impl Sectors {
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        let base = point_groupoid(group);
        let inertia = SectorGroupoid::new(&base, 1)?;
        let two = SectorGroupoid::new(&base, 2)?;
        Ok(Sectors { group: group.clone(), base, inertia, two })
    }
}

/// A mismatch between the two sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub lhs: Angle,
    pub rhs: Angle,
}

/// First tuple of the degree-`degree` nerve where two cochains differ.
pub fn first_difference(g: &FiniteGroupoid, degree: usize, lhs: &Cochain, rhs: &Cochain) -> Option<Witness> {
    let tuples: Vec<Vec<usize>> = g.nerve(degree.max(1)).collect();
    let tuples: Vec<Vec<usize>> =
        if degree == 0 { (0..g.object_count()).map(|x| vec![x]).collect() } else { tuples };
    tuples.into_par_iter().find_map_first(|t| {
        let (l, r) = (lhs.get(&t), rhs.get(&t));
        (l != r).then_some(Witness { tuple: t, lhs: l, rhs: r })
    })
}

/// `theta(phi)` on the inertia groupoid built from a pointwise rule.
pub fn theta_with(s: &Sectors, phi: &Cochain, rule: &ThetaAt) -> Cochain {
    let k = phi.degree() - 1;
    let inertia = &s.inertia;
    Cochain::from_fn(inertia.groupoid(), k, |t| {
        if k == 0 {
            return phi.get(&[inertia.loop_at(t[0], 0)]);
        }
        let (o, us) = inertia.split_tuple(t);
        rule(&s.base, phi, inertia.loop_at(o, 0), &us)
    })
}

/// The rule used throughout the library.
pub fn standard_theta() -> &'static ThetaAt {
    &theta_at
}

/// Both sides of `delta delta c = 0`.
pub fn delta_squared_sides(g: &FiniteGroupoid, c: &Cochain) -> (Cochain, Cochain) {
    (delta(g, &delta(g, c)), Cochain::zero(g, c.degree() + 2))
}

/// `delta delta c = 0`.
pub fn delta_squared(g: &FiniteGroupoid, c: &Cochain) -> Option<Witness> {
    let (lhs, rhs) = delta_squared_sides(g, c);
    first_difference(g, c.degree() + 2, &lhs, &rhs)
}

/// Both sides of `delta theta(phi) = theta(delta phi)`.
pub fn chain_map_sides(s: &Sectors, phi: &Cochain, rule: &ThetaAt) -> (Cochain, Cochain) {
    let ig = s.inertia.groupoid();
    (delta(ig, &theta_with(s, phi, rule)), theta_with(s, &delta(&s.base, phi), rule))
}

/// `delta theta(phi) = theta(delta phi)` on the inertia groupoid.
pub fn chain_map(s: &Sectors, phi: &Cochain, rule: &ThetaAt) -> Option<Witness> {
    let (lhs, rhs) = chain_map_sides(s, phi, rule);
    first_difference(s.inertia.groupoid(), phi.degree(), &lhs, &rhs)
}

/// Both sides of the multiplicative identity on the 2-sectors. With the
/// differential applied literally to `mu(phi)`, a degree-3 `phi` satisfies
/// `mu(delta phi) - delta mu(phi) = e1*theta(phi) + e2*theta(phi) - e12*theta(phi)`;
/// the sign in front of the left side alternates with the degree of `phi`.
pub fn multiplicative_sides(s: &Sectors, phi: &Cochain, rule: &ThetaAt) -> Result<(Cochain, Cochain)> {
    let tg = s.two.groupoid();
    let th = theta_with(s, phi, rule);
    let pull = |which| -> Result<Cochain> {
        let h = evaluation_hom(which, &s.base, &s.two, &s.inertia)?;
        Ok(pullback(&h, tg, &th))
    };
    let rhs = &(&pull(Evaluation::First)? + &pull(Evaluation::Second)?) - &pull(Evaluation::Product)?;
    let lhs = &mu(&s.base, &s.two, &delta(&s.base, phi))? - &delta(tg, &mu(&s.base, &s.two, phi)?);
    let lhs = if phi.degree() % 2 == 1 { lhs } else { -&lhs };
    Ok((lhs, rhs))
}

/// The multiplicative identity for `phi` of degree at least 2, pointwise
/// on the 2-sectors.
pub fn multiplicative(s: &Sectors, phi: &Cochain, rule: &ThetaAt) -> Result<Option<Witness>> {
    let (lhs, rhs) = multiplicative_sides(s, phi, rule)?;
    Ok(first_difference(s.two.groupoid(), phi.degree() - 1, &lhs, &rhs))
}

/// `e*theta(phi) = -delta(e*mu(phi))` on the base, for a cocycle `phi` of
/// degree 3, where `e` is the untwisted-sector embedding. In particular
/// `e*theta(phi)` is a coboundary.
pub fn untwisted_sector(s: &Sectors, phi: &Cochain, rule: &ThetaAt) -> Result<Option<Witness>> {
    let (lhs, rhs) = untwisted_sector_sides(s, phi, rule)?;
    Ok(first_difference(&s.base, phi.degree() - 1, &lhs, &rhs))
}

/// Both sides of `e*theta(phi) = -delta(e*mu(phi))`.
pub fn untwisted_sector_sides(s: &Sectors, phi: &Cochain, rule: &ThetaAt) -> Result<(Cochain, Cochain)> {
    let e1 = unit_embedding(&s.base, &s.inertia);
    let e2 = unit_embedding(&s.base, &s.two);
    let lhs = pullback(&e1, &s.base, &theta_with(s, phi, rule));
    let rhs = -&delta(&s.base, &pullback(&e2, &s.base, &mu(&s.base, &s.two, phi)?));
    Ok((lhs, rhs))
}

/// Outcome of testing the multiplicative identity one degree higher, where
/// it is only observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherDegreeReport {
    pub tuples: usize,
    pub failures: usize,
    pub first: Option<Witness>,
}

/// Runs the multiplicative identity for a degree-4 cochain and counts
/// failing tuples instead of stopping at the first.
pub fn multiplicative_degree_four(s: &Sectors, phi: &Cochain) -> Result<HigherDegreeReport> {
    let tg = s.two.groupoid();
    let (lhs, rhs) = multiplicative_sides(s, phi, standard_theta())?;
    let tuples: Vec<Vec<usize>> = tg.nerve(phi.degree() - 1).collect();
    let bad: Vec<Witness> = tuples
        .par_iter()
        .filter_map(|t| {
            let (l, r) = (lhs.get(t), rhs.get(t));
            (l != r).then(|| Witness { tuple: t.clone(), lhs: l, rhs: r })
        })
        .collect();
    Ok(HigherDegreeReport { tuples: tuples.len(), failures: bad.len(), first: bad.into_iter().next() })
}

/// Compares `fibered_product(e12, e1)` of the 2-sectors with the
/// 3-sectors. The product has an object `((a, b), gamma, (c, d))` for every
/// arrow `gamma: ab -> c`; the objects with `gamma` an identity span a full
/// subgroupoid, which must be isomorphic to the 3-sectors, and every
/// component must meet it.
pub fn fibered_matches_three_sectors(group: &FiniteGroup) -> Result<bool> {
    let s = Sectors::new(group)?;
    let three = SectorGroupoid::new(&s.base, 3)?;
    let two = s.two.groupoid();
    let ig = s.inertia.groupoid();
    let e12 = evaluation_hom(Evaluation::Product, &s.base, &s.two, &s.inertia)?;
    let e1 = evaluation_hom(Evaluation::First, &s.base, &s.two, &s.inertia)?;
    let fp = fibered_product(&e12, two, &e1, two, ig)?;
    let diagonal: Vec<usize> = (0..fp.objects.len())
        .filter(|&i| {
            let (_, gamma, _) = fp.objects[i];
            gamma == ig.identity(ig.source(gamma))
        })
        .collect();
    let (sub, _) = fp.groupoid.full_subgroupoid(&diagonal);
    let on_diagonal: std::collections::HashSet<usize> = diagonal.iter().copied().collect();
    let covered = fp.groupoid.components().iter().all(|c| c.iter().any(|o| on_diagonal.contains(o)));
    Ok(covered && sub.is_isomorphic(three.groupoid()))
}

/// `omega_n(a, b, c) = a floor((b + c) / n) / n`, the standard 3-cocycle
/// of `Z/n`, pulled back along a homomorphism given by its image table.
pub fn cyclic_cocycle_pullback(group: &FiniteGroup, n: usize, hom: &[usize]) -> Cochain {
    let n64 = n as i64;
    group_cochain(group, 3, |t| {
        let (a, b, c) = (hom[t[0]] as i64, hom[t[1]] as i64, hom[t[2]] as i64);
        Angle::new(a * ((b + c) / n64), n64)
    })
}

/// A random degree-3 cocycle on `[*/G]`: a random coboundary, plus random
/// multiples of pulled-back cyclic cocycles, plus (on elementary abelian
/// 2-groups) a random cubic class halved from a cup product.
pub fn random_three_cocycle(group: &FiniteGroup, denominator: i64, rng: &mut impl Rng) -> Result<Cochain> {
    let pt = point_groupoid(group);
    let mut phi = delta(&pt, &Cochain::random(&pt, 2, denominator, rng));
    let exp = group.exponent();
    for n in (2..=exp).filter(|n| exp % n == 0) {
        let homs = group.homs_to_cyclic(n);
        for _ in 0..2 {
            let h = &homs[rng.gen_range(0..homs.len())];
            let k = rng.gen_range(0..n as i64);
            if k != 0 {
                phi = &phi + &cyclic_cocycle_pullback(group, n, h).scaled(k);
            }
        }
    }
    if let Some(r) = elementary_two_rank(group).ok().filter(|&r| r > 0) {
        let mut p = Poly2Class::zero(r);
        for e in cubic_exponents(r) {
            if rng.gen_bool(0.5) {
                p = p.add(&Poly2Class::monomial(e));
            }
        }
        if !p.is_zero() {
            phi = &phi + &poly_to_cocycle(&p, group)?;
        }
    }
    Ok(phi)
}

fn cubic_exponents(r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in i..r {
            for k in j..r {
                let mut e = vec![0u32; r];
                e[i] += 1;
                e[j] += 1;
                e[k] += 1;
                out.push(e);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::is_cocycle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn flipped(base: &FiniteGroupoid, phi: &Cochain, a: usize, us: &[usize]) -> Angle {
        -theta_at(base, phi, a, us)
    }

    #[test]
    fn identities_hold_on_z4() {
        let s = Sectors::new(&FiniteGroup::cyclic(4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi = Cochain::random(&s.base, 3, 8, &mut rng);
        assert_eq!(delta_squared(&s.base, &phi), None);
        assert_eq!(chain_map(&s, &phi, standard_theta()), None);
        assert_eq!(multiplicative(&s, &phi, standard_theta()).unwrap(), None);
    }

    #[test]
    fn flipped_theta_is_caught() {
        let s = Sectors::new(&FiniteGroup::cyclic(4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phi = Cochain::random(&s.base, 3, 8, &mut rng);
        let w = multiplicative(&s, &phi, &flipped).unwrap().expect("a witness");
        assert_ne!(w.lhs, w.rhs);
        assert_eq!(w.tuple.len(), 2);
    }

    #[test]
    fn random_cocycles_are_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in [FiniteGroup::cyclic(4), FiniteGroup::elementary_abelian(2, 2), FiniteGroup::symmetric(3).unwrap()] {
            let pt = point_groupoid(&g);
            for _ in 0..3 {
                let phi = random_three_cocycle(&g, 6, &mut rng).unwrap();
                assert!(is_cocycle(&pt, &phi));
                let s = Sectors::new(&g).unwrap();
                assert_eq!(untwisted_sector(&s, &phi, standard_theta()).unwrap(), None);
            }
        }
    }

    #[test]
    fn fibered_product_of_small_groups() {
        assert!(fibered_matches_three_sectors(&FiniteGroup::cyclic(2)).unwrap());
        assert!(fibered_matches_three_sectors(&FiniteGroup::symmetric(3).unwrap()).unwrap());
    }

    #[test]
    fn cyclic_cocycle_is_closed() {
        for n in 2..6 {
            let g = FiniteGroup::cyclic(n);
            let id: Vec<usize> = g.elements().collect();
            assert!(is_cocycle(&point_groupoid(&g), &cyclic_cocycle_pullback(&g, n, &id)));
        }
    }
}
