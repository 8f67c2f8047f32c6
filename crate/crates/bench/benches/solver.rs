use std::hint::black_box;

use copnum_core::structure::{admits_two_trap, two_trapped_scan};
use copnum_core::{build_gp, classify, cops_win, GpParams, SolverConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn solve(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("cops_win");
    group.sample_size(10);
    for (n, k, cops) in [(10, 3, 2), (10, 3, 3), (18, 5, 3), (25, 7, 3)] {
        let g = build_gp(GpParams::new(n, k).unwrap());
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("GP({n},{k})/{cops}")),
            &g,
            |b, g| b.iter(|| cops_win(g, cops, &cfg).unwrap().cops_win_overall()),
        );
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let g = build_gp(GpParams::new(24, 5).unwrap());
    c.bench_function("admits_two_trap/GP(24,5)", |b| {
        b.iter(|| admits_two_trap(black_box(&g)))
    });
    let g = build_gp(GpParams::new(18, 5).unwrap());
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("two_trapped_scan/GP(18,5)", |b| {
        b.iter(|| two_trapped_scan(black_box(&g)).unwrap().violations.len())
    });
    group.finish();
}

fn classification(c: &mut Criterion) {
    c.bench_function("classify/n<=60", |b| {
        b.iter(|| {
            GpParams::range(5, 60)
                .filter(|&p| classify(black_box(p)).cop4_guaranteed)
                .count()
        })
    });
}

criterion_group!(benches, solve, structure, classification);
criterion_main!(benches);
