use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use deltacol::brooks::complete_one_uncolored;
use deltacol::detcolor::{color_det_netcomp, color_det_rulingforest};
use deltacol::randcolor::{run_randomized, RandConfig, Variant};
use deltacol::workbench::random_regular;

fn deterministic(c: &mut Criterion) {
    let mut group = c.benchmark_group("det");
    group.sample_size(10);
    for n in [256usize, 1024] {
        let g = random_regular(n, 3, 1).unwrap();
        group.bench_with_input(BenchmarkId::new("rulingforest", n), &g, |b, g| {
            b.iter(|| color_det_rulingforest(g).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("netcomp", n), &g, |b, g| {
            b.iter(|| color_det_netcomp(g).unwrap())
        });
    }
    group.finish();
}

fn randomized(c: &mut Criterion) {
    let mut group = c.benchmark_group("rand");
    group.sample_size(10);
    let cfg = RandConfig::default();
    for (n, d) in [(1024usize, 6usize), (1024, 3)] {
        let g = random_regular(n, d, 2).unwrap();
        let variant = if d == 3 {
            Variant::Small
        } else {
            Variant::Large
        };
        group.bench_with_input(
            BenchmarkId::new(variant.name(), format!("{n}x{d}")),
            &g,
            |b, g| b.iter(|| run_randomized(g, variant, 7, &cfg).unwrap()),
        );
    }
    group.finish();
}

fn brooks(c: &mut Criterion) {
    let g = random_regular(2000, 4, 3).unwrap();
    let mut partial = color_det_rulingforest(&g).unwrap().coloring;
    partial.unset(0);
    c.bench_function("brooks/complete_one", |b| {
        b.iter(|| complete_one_uncolored(&g, &partial).unwrap())
    });
}

criterion_group!(benches, deterministic, randomized, brooks);
criterion_main!(benches);
