use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mobius_core::{
    build_algebra, catalog, AugmentedMatroid, Budget, ChowRing, FlatLattice, Matroid,
};

fn entry(name: &str) -> Matroid {
    catalog::lookup(name).unwrap().spec.build().unwrap()
}

fn flats(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("flats");
    for name in ["k5", "nonfano"] {
        let m = entry(name);
        group.bench_function(name, |b| {
            b.iter(|| FlatLattice::enumerate(black_box(&m), &budget).unwrap())
        });
    }
    let u = Matroid::uniform(12, 5).unwrap();
    group.bench_function("u5_12", |b| b.iter(|| FlatLattice::enumerate(black_box(&u), &budget).unwrap()));
    group.finish();
}

fn lefschetz(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("hard_lefschetz");
    for name in ["k5", "b4"] {
        let alg = build_algebra(&entry(name), &budget).unwrap();
        group.bench_function(name, |b| b.iter(|| alg.verify_hard_lefschetz(black_box(1))));
    }
    let alg = build_algebra(&Matroid::uniform(10, 5).unwrap(), &budget).unwrap();
    group.bench_function("u5_10", |b| b.iter(|| alg.verify_hard_lefschetz(black_box(2))));
    group.finish();
}

fn chow(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("chow_ring");
    group.sample_size(10);
    for name in ["k4", "b4"] {
        let lat = FlatLattice::enumerate(&entry(name), &budget).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| ChowRing::new(AugmentedMatroid::new(black_box(&lat)), &budget).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, flats, lefschetz, chow);
criterion_main!(benches);
