use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stringy_core::checks::{self, Sectors};
use stringy_core::cochain::{delta, is_cocycle, Cochain};
use stringy_core::fusion::{basis, character, star, star_classes, validate_bundle, TwistContext};
use stringy_core::groupoid::point_groupoid;
use stringy_core::solve::coboundary_solve;
use stringy_core::twisted::{normalize_cocycle, twisted_rank, TwistedAlgebra};
use stringy_core::FiniteGroup;

fn small_group(i: usize) -> FiniteGroup {
    match i % 5 {
        0 => FiniteGroup::cyclic(4),
        1 => FiniteGroup::elementary_abelian(2, 2),
        2 => FiniteGroup::symmetric(3).unwrap(),
        3 => FiniteGroup::cyclic(3),
        _ => FiniteGroup::cyclic(2),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_squared_is_zero(g in 0usize..5, degree in 0usize..3, seed in any::<u64>()) {
        let group = small_group(g);
        let pt = point_groupoid(&group);
        let c = Cochain::random(&pt, degree, 12, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(checks::delta_squared(&pt, &c), None);
    }

    #[test]
    fn theta_commutes_with_delta(g in 0usize..5, degree in 1usize..4, seed in any::<u64>()) {
        let s = Sectors::new(&small_group(g)).unwrap();
        let phi = Cochain::random(&s.base, degree, 10, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(checks::chain_map(&s, &phi, checks::standard_theta()), None);
    }

    #[test]
    fn multiplicative_identity(g in 0usize..5, degree in 2usize..4, seed in any::<u64>()) {
        let s = Sectors::new(&small_group(g)).unwrap();
        let phi = Cochain::random(&s.base, degree, 10, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(checks::multiplicative(&s, &phi, checks::standard_theta()).unwrap(), None);
    }

    #[test]
    fn coboundaries_are_solved(g in 0usize..5, degree in 1usize..3, seed in any::<u64>()) {
        let pt = point_groupoid(&small_group(g));
        let b = Cochain::random(&pt, degree, 9, &mut ChaCha8Rng::seed_from_u64(seed));
        let c = delta(&pt, &b);
        let x = coboundary_solve(&pt, &c).unwrap().expect("a coboundary");
        prop_assert_eq!(delta(&pt, &x), c);
    }

    #[test]
    fn random_cocycles_close_and_cor_holds(g in 0usize..5, seed in any::<u64>()) {
        let group = small_group(g);
        let s = Sectors::new(&group).unwrap();
        let phi = checks::random_three_cocycle(&group, 6, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(is_cocycle(&s.base, &phi));
        prop_assert_eq!(checks::untwisted_sector(&s, &phi, checks::standard_theta()).unwrap(), None);
    }

    #[test]
    fn rank_is_invariant_under_coboundary_shift(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = FiniteGroup::elementary_abelian(2, 2);
        let pt = point_groupoid(&group);
        let classes = stringy_core::twisted::abelian_cocycle_classes(&group).unwrap();
        for tc in classes {
            let shifted = &tc.to_cochain() + &delta(&pt, &Cochain::random(&pt, 1, 8, &mut rng));
            let (n, _) = normalize_cocycle(&group, &shifted).unwrap();
            prop_assert_eq!(twisted_rank(&n).unwrap(), twisted_rank(&tc).unwrap());
            prop_assert_eq!(TwistedAlgebra::new(&n).center_dimension(), twisted_rank(&tc).unwrap());
        }
    }
}

// The context and basis are costly, so these run over fixed samples.

#[test]
fn star_dimensions_and_commutativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for group in [FiniteGroup::cyclic(4), FiniteGroup::symmetric(3).unwrap()] {
        let phi = checks::random_three_cocycle(&group, 4, &mut rng).unwrap();
        let ctx = TwistContext::new(&group, &phi).unwrap();
        let b = basis(&ctx).unwrap();
        for x in &b {
            for y in &b {
                let p = star(&ctx, &x.bundle, &y.bundle).unwrap();
                validate_bundle(&ctx, &p).unwrap();
                for g in group.elements() {
                    let expect: usize = group
                        .elements()
                        .map(|g1| x.bundle.dim(g1) * y.bundle.dim(group.mul(group.inv(g1), g)))
                        .sum();
                    assert_eq!(p.dim(g), expect);
                }
                let chi = character(&ctx, &p);
                assert_eq!(chi, star_classes(&ctx, &x.character, &y.character));
                assert_eq!(chi, character(&ctx, &star(&ctx, &y.bundle, &x.bundle).unwrap()));
            }
        }
    }
}

#[test]
fn normalising_a_coboundary() {
    let group = FiniteGroup::cyclic(4);
    let pt = point_groupoid(&group);
    // b(1) = 0, not a homomorphism: delta b is already normalised and stays put
    let mut b = Cochain::zero(&pt, 1);
    b.set(&[1], stringy_core::Angle::new(1, 3));
    let db = delta(&pt, &b);
    let (n, rho) = normalize_cocycle(&group, &db).unwrap();
    assert!(rho.is_zero());
    assert_eq!(n.to_cochain(), db);
    assert!(!db.is_zero());
    assert!(coboundary_solve(&pt, &n.to_cochain()).unwrap().is_some());
    // a homomorphism has zero coboundary
    let hom = Cochain::from_fn(&pt, 1, |t| stringy_core::Angle::new(t[0] as i64, 4));
    assert!(normalize_cocycle(&group, &delta(&pt, &hom)).unwrap().0.to_cochain().is_zero());
}
