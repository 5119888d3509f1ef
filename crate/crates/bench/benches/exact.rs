use std::hint::black_box;

use besselpoly::bessel_poly::{cn_explicit_table, pn_polys, symbolic_alpha};
use besselpoly::moments::{orthogonality_check, stieltjes_fraction_free};
use besselpoly::{poly_gcd, Polynomial, Rational};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("pn_symbolic");
    for n in [4usize, 8, 12] {
        group.bench_with_input(BenchmarkId::new("operator", n), &n, |b, &n| {
            b.iter(|| pn_polys(black_box(n), &symbolic_alpha()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("explicit", n), &n, |b, &n| {
            b.iter(|| cn_explicit_table(black_box(n), &symbolic_alpha()).unwrap())
        });
    }
    group.finish();

    c.bench_function("pn_fixed_20", |b| b.iter(|| pn_polys(black_box(20), &Rational::frac(7, 3)).unwrap()));
}

fn gcd(c: &mut Criterion) {
    let root = |r: i64| Polynomial::new(vec![Rational::from(-r), Rational::one()]);
    let p = (1..=12).fold(Polynomial::one(), |acc, r| &acc * &root(r));
    let q = (7..=18).fold(Polynomial::one(), |acc, r| &acc * &root(r));
    c.bench_function("poly_gcd_deg12", |b| b.iter(|| poly_gcd(black_box(&p), black_box(&q)).unwrap()));
}

fn stieltjes(c: &mut Criterion) {
    let mut group = c.benchmark_group("stieltjes");
    group.sample_size(10);
    for n in [4usize, 6] {
        group.bench_with_input(BenchmarkId::new("fraction_free", n), &n, |b, &n| {
            b.iter(|| stieltjes_fraction_free(black_box(n)).unwrap().orthogonality().unwrap())
        });
    }
    group
        .bench_function("fixed_alpha_12", |b| b.iter(|| orthogonality_check(black_box(12), &Rational::one()).unwrap()));
    group.finish();
}

criterion_group!(benches, construction, gcd, stieltjes);
criterion_main!(benches);
