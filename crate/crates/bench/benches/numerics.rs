use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use harmzeta_core::numerics::{digamma, ein, hurwitz_zeta, log_gamma, zeta_minus_one};
use harmzeta_core::series::s_n;

fn special_functions(c: &mut Criterion) {
    c.bench_function("digamma(3.7)", |b| b.iter(|| digamma(black_box(3.7))));
    c.bench_function("log_gamma(0.3)", |b| b.iter(|| log_gamma(black_box(0.3))));
    c.bench_function("hurwitz_zeta(2.5, 0.5)", |b| {
        b.iter(|| hurwitz_zeta(black_box(2.5), black_box(0.5)))
    });
    c.bench_function("zeta_minus_one(40)", |b| {
        b.iter(|| zeta_minus_one(black_box(40)))
    });
    c.bench_function("ein(2.5)", |b| b.iter(|| ein(black_box(2.5))));
    c.bench_function("ein(50)", |b| b.iter(|| ein(black_box(50.0))));
    c.bench_function("s_n(2)", |b| b.iter(|| s_n(black_box(2))));
}

criterion_group!(benches, special_functions);
criterion_main!(benches);
