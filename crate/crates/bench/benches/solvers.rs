use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vortex_atlas::census::census_at;
use vortex_atlas::collinear::{asymmetric_polynomial, root_count};
use vortex_atlas::kite::{atlas, solve_kite};
use vortex_atlas::ratpoly::{decimal_eps, isolate_roots, rat, real_roots};

fn collinear(c: &mut Criterion) {
    let mut group = c.benchmark_group("collinear");
    for (n, d) in [(1, 2), (-3, 4), (2, 1)] {
        let gamma4 = rat(n, d);
        group.bench_with_input(BenchmarkId::new("root_count", format!("{n}/{d}")), &gamma4, |b, g| {
            b.iter(|| root_count(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn sturm(c: &mut Criterion) {
    let mut group = c.benchmark_group("sturm");
    let p = asymmetric_polynomial(&rat(1, 2));
    group.bench_function("isolate", |b| b.iter(|| isolate_roots(black_box(&p)).unwrap()));
    let eps = decimal_eps(30);
    group.bench_function("refine_1e-30", |b| b.iter(|| real_roots(black_box(&p), &eps).unwrap()));
    group.finish();
}

fn kite(c: &mut Criterion) {
    atlas();
    let mut group = c.benchmark_group("kite");
    for gamma4 in [0.5, -0.25, 2.0] {
        group.bench_with_input(BenchmarkId::new("solve", gamma4), &gamma4, |b, &g| {
            b.iter(|| solve_kite(black_box(g), 1e-12).unwrap())
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    atlas();
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    let gamma4 = rat(1, 2);
    group.bench_function("row_1/2", |b| b.iter(|| census_at(black_box(&gamma4)).unwrap()));
    group.finish();
}

criterion_group!(benches, collinear, sturm, kite, census);
criterion_main!(benches);
