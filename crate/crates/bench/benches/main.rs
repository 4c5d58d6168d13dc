//! Timing groups: the lca checker across tree sizes, the bounded anc
//! checker across deep trees, and the backtracking solvers on hard
//! generated instances, where the growth with n is the interesting
//! part.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use std::time::Duration;
use treembed_bench::{
    anc_instance, assert_lca_matches_oracle_on_small_instances, lca_instance, reduction_instances,
};
use treembed_core::poly::{check_anc_bounded, check_lca};
use treembed_core::solver::{solve_anc, solve_inj, SearchConfig};

fn lca_scale(c: &mut Criterion) {
    assert_lca_matches_oracle_on_small_instances();
    let mut group = c.benchmark_group("lca_scale");
    group.sample_size(20);
    for size in [1_000, 10_000, 100_000] {
        let (t, p) = lca_instance(size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| check_lca(black_box(&t), black_box(&p)))
        });
    }
    group.finish();
}

fn anc_bounded(c: &mut Criterion) {
    let mut group = c.benchmark_group("anc_bounded");
    group.sample_size(20);
    for size in [1_000, 3_000, 10_000] {
        let (t, p) = anc_instance(size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| check_anc_bounded(black_box(&t), black_box(&p)))
        });
    }
    group.finish();
}

fn reduction_growth(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let mut group = c.benchmark_group("reduction_growth");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(8));
    for n in 2..=5usize {
        let ((inj_t, inj_p), (anc_t, anc_p)) = reduction_instances(n);
        group.bench_with_input(BenchmarkId::new("inj", n), &n, |b, _| {
            b.iter(|| solve_inj(black_box(&inj_t), black_box(&inj_p), &cfg))
        });
        group.bench_with_input(BenchmarkId::new("anc", n), &n, |b, _| {
            b.iter(|| solve_anc(black_box(&anc_t), black_box(&anc_p), &cfg))
        });
    }
    group.finish();
}

criterion_group!(benches, lca_scale, anc_bounded, reduction_growth);
criterion_main!(benches);
