//! Untwisted products against an independent model: the total space of a
//! bundle as an ordinary representation graded by the group, where the
//! product is the plain tensor product regraded by multiplication.

use stringy_core::cyclotomic::Cyclotomic;
use stringy_core::fusion::{basis, character, star, validate_bundle, TwistContext, TwistedBundle};
use stringy_core::matrix::Matrix;
use stringy_core::FiniteGroup;

struct Total {
    grade: Vec<usize>,
    action: Vec<Matrix>,
}

fn total(group: &FiniteGroup, v: &TwistedBundle) -> Total {
    let offsets: Vec<usize> = group.elements().scan(0, |acc, g| {
        let o = *acc;
        *acc += v.dim(g);
        Some(o)
    }).collect();
    let n = v.total_dim();
    let grade: Vec<usize> = group.elements().flat_map(|g| std::iter::repeat(g).take(v.dim(g))).collect();
    let action = group
        .elements()
        .map(|u| {
            let mut m = Matrix::zeros(n, n);
            for g in group.elements().filter(|&g| v.dim(g) > 0) {
                m.put_block(offsets[g], offsets[group.conj(g, u)], v.matrix(g, u).unwrap());
            }
            m
        })
        .collect();
    Total { grade, action }
}

/// `chi(g, u)` of the tensor product, regraded by `g1 g2`.
fn oracle_character(group: &FiniteGroup, v: &TwistedBundle, w: &TwistedBundle, g: usize, u: usize) -> Cyclotomic {
    let (tv, tw) = (total(group, v), total(group, w));
    let k = tv.action[u].kron(&tw.action[u]);
    let mut sum = Cyclotomic::zero();
    for (i, &a) in tv.grade.iter().enumerate() {
        for (j, &b) in tw.grade.iter().enumerate() {
            if group.mul(a, b) == g {
                let idx = i * tw.grade.len() + j;
                sum = &sum + k.get(idx, idx);
            }
        }
    }
    sum
}

fn check_group(group: FiniteGroup) {
    let ctx = TwistContext::untwisted(&group);
    let b = basis(&ctx).unwrap();
    for x in &b {
        let tv = total(&group, &x.bundle);
        // untwisted: the total space is an honest representation
        for u1 in group.elements() {
            for u2 in group.elements() {
                assert_eq!(tv.action[u1].mul(&tv.action[u2]), tv.action[group.mul(u1, u2)]);
            }
        }
        for y in &b {
            let p = star(&ctx, &x.bundle, &y.bundle).unwrap();
            validate_bundle(&ctx, &p).unwrap();
            let chi = character(&ctx, &p);
            for &(g, u) in ctx.pairs() {
                assert_eq!(chi.value(&ctx, g, u).unwrap(), &oracle_character(&group, &x.bundle, &y.bundle, g, u));
            }
        }
    }
}

#[test]
fn untwisted_z2_matches_tensor_model() {
    check_group(FiniteGroup::cyclic(2));
}

#[test]
fn untwisted_s3_matches_tensor_model() {
    check_group(FiniteGroup::symmetric(3).unwrap());
}

#[test]
fn untwisted_z3_matches_tensor_model() {
    check_group(FiniteGroup::cyclic(3));
}

/// On the total space, a bundle over the class of `g` built from a
/// representation of the centralizer is the induced representation.
#[test]
fn s3_sector_bundles_are_induced() {
    let group = FiniteGroup::symmetric(3).unwrap();
    let ctx = TwistContext::untwisted(&group);
    for e in basis(&ctx).unwrap() {
        let z = group.centralizer(e.sector);
        let tv = total(&group, &e.bundle);
        for u in group.elements() {
            // induced character: (1/|Z|) sum over x with x^-1 u x in Z
            let mut sum = Cyclotomic::zero();
            for x in group.elements() {
                let c = group.conj(u, x);
                if z.contains(c) {
                    sum = &sum + e.character.value(&ctx, e.sector, c).unwrap();
                }
            }
            let induced = &sum * &Cyclotomic::from_rational(num::BigRational::new(1.into(), (z.order() as i64).into()));
            assert_eq!(tv.action[u].trace(), induced, "sector {} at {u}", e.sector);
        }
    }
}

#[test]
fn regular_bundle_character() {
    let group = FiniteGroup::dihedral(4).unwrap();
    let ctx = TwistContext::untwisted(&group);
    let reg = TwistedBundle::regular(&ctx);
    validate_bundle(&ctx, &reg).unwrap();
    let chi = character(&ctx, &reg);
    for u in group.elements() {
        let expect = if u == 0 { 8 } else { 0 };
        assert_eq!(chi.value(&ctx, 0, u).unwrap(), &Cyclotomic::from_int(expect));
    }
}
