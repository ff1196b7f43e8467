use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use crashskew::garchs::{fit_garchs, neg_log_likelihood, simulate_garchs, FitOptions};
use crashskew::{GarchSParams, ShockForm};

fn params() -> GarchSParams {
    GarchSParams { mu: 2e-4, alpha0: 2e-6, alpha1: 0.08, alpha2: 0.9, beta0: -0.05, beta1: 0.03, beta2: 0.3 }
}

fn likelihood(c: &mut Criterion) {
    let r = simulate_garchs(&params(), 5000, 1, ShockForm::Cubed).unwrap();
    c.bench_function("nll_5000", |b| {
        b.iter(|| neg_log_likelihood(black_box(&r), black_box(&params()), ShockForm::Cubed).unwrap())
    });
}

fn estimation(c: &mut Criterion) {
    let r = simulate_garchs(&params(), 1000, 2, ShockForm::Cubed).unwrap();
    let mut group = c.benchmark_group("fit");
    group.sample_size(10);
    group.bench_function("fit_garchs_1000_single_start", |b| {
        let opts = FitOptions { starts: 1, ..FitOptions::default() };
        b.iter(|| fit_garchs(black_box(&r), &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, likelihood, estimation);
criterion_main!(benches);
