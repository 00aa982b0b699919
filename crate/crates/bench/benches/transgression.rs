use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stringy_core::cochain::Cochain;
use stringy_core::groupoid::{point_groupoid, SectorGroupoid};
use stringy_core::poly::{poly_to_cocycle, Poly2Class};
use stringy_core::solve::coboundary_solve;
use stringy_core::transgression::{shuffle_theta, theta};
use stringy_core::FiniteGroup;

fn groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z4", FiniteGroup::cyclic(4)),
        ("S3", FiniteGroup::symmetric(3).unwrap()),
        ("D4", FiniteGroup::dihedral(4).unwrap()),
        ("Z2^3", FiniteGroup::elementary_abelian(2, 3)),
    ]
}

fn bench_theta(c: &mut Criterion) {
    let mut group = c.benchmark_group("theta");
    for (name, g) in groups() {
        let pt = point_groupoid(&g);
        let inertia = SectorGroupoid::new(&pt, 1).unwrap();
        let phi = Cochain::random(&pt, 3, 12, &mut ChaCha8Rng::seed_from_u64(1));
        group.bench_with_input(BenchmarkId::new("groupoid", name), &phi, |b, phi| {
            b.iter(|| theta(&pt, &inertia, phi).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("shuffle", name), &phi, |b, phi| {
            b.iter(|| g.elements().map(|x| shuffle_theta(&g, phi, x).unwrap().2).count())
        });
    }
    group.finish();
}

fn bench_solve(c: &mut Criterion) {
    let g = FiniteGroup::elementary_abelian(2, 3);
    let phi = poly_to_cocycle(&Poly2Class::parse("xyz", 3).unwrap(), &g).unwrap();
    let pt = point_groupoid(&g);
    let mut group = c.benchmark_group("coboundary_solve");
    for x in [0, 7] {
        let th = shuffle_theta(&g, &phi, x).unwrap().2;
        group.bench_with_input(BenchmarkId::new("Z2^3 sector", x), &th, |b, th| {
            b.iter(|| coboundary_solve(&pt, th).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_theta, bench_solve);
criterion_main!(benches);
