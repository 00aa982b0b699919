//! The inverse transgression `theta`, the homotopy `mu`, and the shuffle
//! description of `theta` on the sectors of a finite group.

use crate::angle::Angle;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::groupoid::{point_groupoid, FiniteGroupoid, SectorGroupoid};

/// Arrow tuple `(u_1, ..., u_i, a_i, u_{i+1}, ..., u_k)` where `a_i` is
/// `a` conjugated along `u_1 ... u_i`.
fn insert_loop(base: &FiniteGroupoid, a: usize, us: &[usize], i: usize, out: &mut Vec<usize>) {
    out.clear();
    let mut ai = a;
    for &u in &us[..i] {
        ai = base.conjugate(ai, u);
    }
    out.extend_from_slice(&us[..i]);
    out.push(ai);
    out.extend_from_slice(&us[i..]);
}

/// `theta(phi)(a, u_1, ..., u_k)` for a degree-(k+1) cochain `phi`.
pub fn theta_at(base: &FiniteGroupoid, phi: &Cochain, a: usize, us: &[usize]) -> Angle {
    let k = us.len();
    let mut buf = Vec::with_capacity(k + 1);
    insert_loop(base, a, us, 0, &mut buf);
    let mut total = phi.get(&buf).signed(k);
    for i in 1..=k {
        insert_loop(base, a, us, i, &mut buf);
        total += phi.get(&buf).signed(i + k);
    }
    total
}

/// The inverse transgression of a cochain of degree `k + 1 >= 1` on `base`,
/// as a degree-k cochain on the inertia groupoid.
pub fn theta(base: &FiniteGroupoid, inertia: &SectorGroupoid, phi: &Cochain) -> Result<Cochain> {
    if phi.degree() == 0 {
        return Err(Error::usage("theta needs a cochain of degree at least 1"));
    }
    if inertia.k() != 1 {
        return Err(Error::usage("theta lands on the inertia groupoid"));
    }
    let k = phi.degree() - 1;
    let ig = inertia.groupoid();
    Ok(Cochain::from_fn(ig, k, |t| {
        if k == 0 {
            return phi.get(&[inertia.loop_at(t[0], 0)]);
        }
        let (o, us) = inertia.split_tuple(t);
        theta_at(base, phi, inertia.loop_at(o, 0), &us)
    }))
}

/// `mu(phi)(a, b, u_1, ..., u_k)` for a degree-(k+2) cochain `phi`.
pub fn mu_at(base: &FiniteGroupoid, phi: &Cochain, a: usize, b: usize, us: &[usize]) -> Angle {
    let k = us.len();
    let mut t = Vec::with_capacity(k + 2);
    t.push(a);
    t.push(b);
    t.extend_from_slice(us);
    let mut total = phi.get(&t);
    // conjugates a_i and b_i along u_1 ... u_i
    let mut ai = vec![a];
    let mut bi = vec![b];
    for (i, &u) in us.iter().enumerate() {
        ai.push(base.conjugate(ai[i], u));
        bi.push(base.conjugate(bi[i], u));
    }
    for j in 0..=k {
        for i in 0..=j {
            if i == 0 && j == 0 {
                continue;
            }
            t.clear();
            t.extend_from_slice(&us[..i]);
            t.push(ai[i]);
            t.extend_from_slice(&us[i..j]);
            t.push(bi[j]);
            t.extend_from_slice(&us[j..]);
            total += phi.get(&t).signed(i + j);
        }
    }
    total
}

/// The homotopy `mu` from degree `k + 2 >= 2` on `base` to degree k on
/// the 2-sectors.
pub fn mu(base: &FiniteGroupoid, two: &SectorGroupoid, phi: &Cochain) -> Result<Cochain> {
    if phi.degree() < 2 {
        return Err(Error::usage("mu needs a cochain of degree at least 2"));
    }
    if two.k() != 2 {
        return Err(Error::usage("mu lands on the 2-sectors"));
    }
    let k = phi.degree() - 2;
    Ok(Cochain::from_fn(two.groupoid(), k, |t| {
        if k == 0 {
            return phi.get(&[two.loop_at(t[0], 0), two.loop_at(t[0], 1)]);
        }
        let (o, us) = two.split_tuple(t);
        mu_at(base, phi, two.loop_at(o, 0), two.loop_at(o, 1), &us)
    }))
}

/// Shuffle form of the transgression on the sector of `g`:
/// `theta_g(phi)(g_1, ..., g_k)` is the signed sum over the k+1 ways of
/// inserting `g` into `(g_1, ..., g_k)`, inserting at position j with sign
/// `(-1)^(k-j)`. The result is a cochain on the centralizer, returned
/// together with it; centralizer element `i` is `members[i]` of the parent.
pub fn shuffle_theta(group: &FiniteGroup, phi: &Cochain, g: usize) -> Result<(Subgroup, FiniteGroup, Cochain)> {
    if phi.degree() == 0 {
        return Err(Error::usage("theta needs a cochain of degree at least 1"));
    }
    let k = phi.degree() - 1;
    let z = group.centralizer(g);
    let zg = group.restrict(&z);
    let pt = point_groupoid(&zg);
    let members = z.members.clone();
    let c = Cochain::from_fn(&pt, k, |t| {
        let args: Vec<usize> = if k == 0 { vec![] } else { t.iter().map(|&i| members[i]).collect() };
        let mut total = Angle::ZERO;
        let mut word = Vec::with_capacity(k + 1);
        for j in 0..=k {
            word.clear();
            word.extend_from_slice(&args[..j]);
            word.push(g);
            word.extend_from_slice(&args[j..]);
            total += phi.get(&word).signed(k - j);
        }
        total
    });
    Ok((z, zg, c))
}

/// Restricts a cochain on the inertia groupoid of `[*/G]` to the sector of
/// `g`, read as a cochain on the centralizer (indexed as in
/// [`shuffle_theta`]). Degree-0 cochains give the value at `g`.
pub fn sector_restriction(
    group: &FiniteGroup,
    inertia: &SectorGroupoid,
    c: &Cochain,
    g: usize,
) -> (Subgroup, FiniteGroup, Cochain) {
    let base = point_groupoid(group);
    let z = group.centralizer(g);
    let zg = group.restrict(&z);
    let pt = point_groupoid(&zg);
    let o = inertia.object_of(&[g]).expect("g is a loop");
    let k = c.degree();
    let members = z.members.clone();
    let r = Cochain::from_fn(&pt, k, |t| {
        if k == 0 {
            return c.get(&[o]);
        }
        let us: Vec<usize> = t.iter().map(|&i| members[i]).collect();
        c.get(&inertia.join_tuple(&base, o, &us))
    });
    (z, zg, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::delta;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(g: &FiniteGroup) -> (FiniteGroupoid, SectorGroupoid, SectorGroupoid) {
        let pt = point_groupoid(g);
        let one = SectorGroupoid::new(&pt, 1).unwrap();
        let two = SectorGroupoid::new(&pt, 2).unwrap();
        (pt, one, two)
    }

    #[test]
    fn theta_of_zero_is_zero() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let (pt, one, two) = setup(&g);
        assert!(theta(&pt, &one, &Cochain::zero(&pt, 3)).unwrap().is_zero());
        assert!(mu(&pt, &two, &Cochain::zero(&pt, 3)).unwrap().is_zero());
        assert!(theta(&pt, &one, &Cochain::zero(&pt, 0)).is_err());
        assert!(mu(&pt, &two, &Cochain::zero(&pt, 1)).is_err());
    }

    #[test]
    fn low_degree_expansions() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let g = FiniteGroup::symmetric(3).unwrap();
        let (pt, one, two) = setup(&g);
        let phi2 = Cochain::random(&pt, 2, 12, &mut rng);
        let phi3 = Cochain::random(&pt, 3, 12, &mut rng);
        let t2 = theta(&pt, &one, &phi2).unwrap();
        let t3 = theta(&pt, &one, &phi3).unwrap();
        let m2 = mu(&pt, &two, &phi2).unwrap();
        let m3 = mu(&pt, &two, &phi3).unwrap();
        for a in g.elements() {
            let o = one.object_of(&[a]).unwrap();
            for u in g.elements() {
                let a1 = g.conj(a, u);
                let arrow = one.arrow(&pt, o, u);
                assert_eq!(t2.get(&[arrow]), phi2.get(&[u, a1]) - phi2.get(&[a, u]));
                for v in g.elements() {
                    let a2 = g.conj(a1, v);
                    let t = one.join_tuple(&pt, o, &[u, v]);
                    let expect = phi3.get(&[a, u, v]) - phi3.get(&[u, a1, v]) + phi3.get(&[u, v, a2]);
                    assert_eq!(t3.get(&t), expect);
                }
            }
            for b in g.elements() {
                let o2 = two.object_of(&[a, b]).unwrap();
                assert_eq!(m2.get(&[o2]), phi2.get(&[a, b]));
                for u in g.elements() {
                    let (a1, b1) = (g.conj(a, u), g.conj(b, u));
                    let arrow = two.arrow(&pt, o2, u);
                    let expect = phi3.get(&[a, b, u]) - phi3.get(&[a, u, b1]) + phi3.get(&[u, a1, b1]);
                    assert_eq!(m3.get(&[arrow]), expect);
                }
            }
        }
    }

    #[test]
    fn abelian_degree_one_theta_vanishes_on_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let g = FiniteGroup::cyclic(4);
        let (pt, one, _) = setup(&g);
        let phi = Cochain::random(&pt, 2, 8, &mut rng);
        let t = theta(&pt, &one, &phi).unwrap();
        for a in g.elements() {
            let o = one.object_of(&[a]).unwrap();
            assert!(t.get(&[one.arrow(&pt, o, a)]).is_zero());
        }
    }

    #[test]
    fn theta_is_a_chain_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let g = FiniteGroup::dihedral(4).unwrap();
        let (pt, one, _) = setup(&g);
        let ig = one.groupoid();
        for k in 1..=3 {
            let phi = Cochain::random(&pt, k, 10, &mut rng);
            let lhs = delta(ig, &theta(&pt, &one, &phi).unwrap());
            let rhs = theta(&pt, &one, &delta(&pt, &phi)).unwrap();
            assert_eq!(lhs, rhs, "degree {k}");
        }
    }

    #[test]
    fn shuffle_matches_groupoid_theta() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for g in [FiniteGroup::symmetric(3).unwrap(), FiniteGroup::elementary_abelian(2, 2)] {
            let (pt, one, _) = setup(&g);
            for k in 1..=3 {
                let phi = Cochain::random(&pt, k, 6, &mut rng);
                let th = theta(&pt, &one, &phi).unwrap();
                for x in g.elements() {
                    let (_, _, s) = shuffle_theta(&g, &phi, x).unwrap();
                    let (_, _, r) = sector_restriction(&g, &one, &th, x);
                    assert_eq!(s, r);
                }
            }
        }
    }

    #[test]
    fn shuffle_in_degree_zero_is_evaluation() {
        let g = FiniteGroup::cyclic(3);
        let pt = point_groupoid(&g);
        let mut phi = Cochain::zero(&pt, 1);
        phi.set(&[2], Angle::new(1, 3));
        let (_, _, s) = shuffle_theta(&g, &phi, 2).unwrap();
        assert_eq!(s.get(&[0]), Angle::new(1, 3));
    }
}
