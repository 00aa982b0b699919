use rayon::prelude::*;

use stringy_core::checks::fibered_matches_three_sectors;
use stringy_core::fusion::{basis, character, star, structure_constants, validate_bundle, TwistContext, TwistedBundle};
use stringy_core::poly::{poly_to_cocycle, Poly2Class};
use stringy_core::FiniteGroup;

fn alpha() -> TwistContext {
    let g = FiniteGroup::elementary_abelian(2, 3);
    let phi = poly_to_cocycle(&Poly2Class::parse("xyz", 3).unwrap(), &g).unwrap();
    TwistContext::new(&g, &phi).unwrap()
}

#[test]
fn alpha_table_is_integral_associative_and_commutative() {
    let ctx = alpha();
    let b = basis(&ctx).unwrap();
    assert_eq!(b.len(), 22);
    let bundles: Vec<TwistedBundle> = b.iter().map(|e| e.bundle.clone()).collect();
    let t = structure_constants(&ctx, &bundles).unwrap();
    assert!(t.constants.iter().flatten().flatten().all(|&n| n >= 0));
    assert_eq!(t.commutativity_witness(), None);
    assert_eq!(t.associativity_witness(), None);
    // the unit is the trivial line over the identity
    let unit = b.iter().position(|e| e.bundle == TwistedBundle::unit(&ctx)).expect("unit in basis");
    for a in 0..22 {
        for c in 0..22 {
            assert_eq!(t.constants[unit][a][c], i64::from(a == c));
        }
    }
    // total dimension is multiplicative
    for x in 0..22 {
        for y in 0..22 {
            let dim: usize = (0..22).map(|c| t.constants[x][y][c] as usize * bundles[c].total_dim()).sum();
            assert_eq!(dim, bundles[x].total_dim() * bundles[y].total_dim());
        }
    }
}

#[test]
fn alpha_bundle_products_associate() {
    let ctx = alpha();
    let b: Vec<TwistedBundle> = basis(&ctx).unwrap().into_iter().map(|e| e.bundle).collect();
    let n = b.len();
    let pairs: Vec<TwistedBundle> = (0..n * n).into_par_iter().map(|i| star(&ctx, &b[i / n], &b[i % n]).unwrap()).collect();
    let bad = (0..n * n * n).into_par_iter().find_first(|&i| {
        let (x, y, z) = (i / (n * n), i / n % n, i % n);
        let left = star(&ctx, &pairs[x * n + y], &b[z]).unwrap();
        let right = star(&ctx, &b[x], &pairs[y * n + z]).unwrap();
        character(&ctx, &left) != character(&ctx, &right)
    });
    assert_eq!(bad, None);
    for p in &pairs {
        validate_bundle(&ctx, p).unwrap();
    }
}

#[test]
fn fibered_product_for_order_eight() {
    assert!(fibered_matches_three_sectors(&FiniteGroup::dihedral(4).unwrap()).unwrap());
    assert!(fibered_matches_three_sectors(&FiniteGroup::elementary_abelian(2, 3)).unwrap());
}
