use std::hint::black_box;

use besselpoly::numeric::{
    bessel_k0, bessel_k_itau, pn_integral_representation, weight_moment, QuadratureConfig, WeightSpec,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn kernels(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    c.bench_function("k0_series_and_cf", |b| {
        b.iter(|| [0.01, 1.0, 2.5, 30.0].map(|x| bessel_k0(black_box(x)).unwrap()))
    });
    c.bench_function("k_itau_tau10_x1", |b| b.iter(|| bessel_k_itau(black_box(10.0), black_box(1.0), &cfg).unwrap()));
}

fn integrals(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let w = WeightSpec::new(2.5).unwrap();
    c.bench_function("weight_moment_n8", |b| b.iter(|| weight_moment(black_box(8), &w, &cfg).unwrap()));

    let mut group = c.benchmark_group("representation");
    group.sample_size(10);
    group.bench_function("p3_alpha1.5_x0.5", |b| {
        b.iter(|| pn_integral_representation(black_box(3), 0.5, 1.5, &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, kernels, integrals);
criterion_main!(benches);
