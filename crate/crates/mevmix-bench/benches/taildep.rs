//! Inclusion-exclusion engine cost: 2^d subset enumeration per mass.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use mevmix::{orthant_lambda, SubsetMask};
use mevmix_bench::logistic_model;

fn bench_orthant_lambda(c: &mut Criterion) {
    let mut group = c.benchmark_group("orthant_lambda");
    for dim in [2, 4, 8, 12] {
        let model = logistic_model(dim);
        let j = SubsetMask::singleton(dim, dim - 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &j, |b, j| {
            b.iter(|| orthant_lambda(&model, black_box(j)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_orthant_lambda);
criterion_main!(benches);
