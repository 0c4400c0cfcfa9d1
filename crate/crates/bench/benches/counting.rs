//! Counting benchmarks on the published table instances. The interesting
//! axis is node count, not excess size: exact arithmetic keeps huge
//! excesses cheap while each extra node multiplies residue work.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use flowcount::{kostant_count, transportation_count};

fn bench_complete_graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("complete-graphs");
    group.sample_size(20);
    group.bench_function("k4_small_excess", |b| {
        b.iter(|| kostant_count(black_box(&[6, 8, -5, -9])).unwrap())
    });
    group.bench_function("k4_huge_excess", |b| {
        b.iter(|| kostant_count(black_box(&[69295, 62008, -28678, -102625])).unwrap())
    });
    group.bench_function("k5_mixed_signs", |b| {
        b.iter(|| kostant_count(black_box(&[763, 41, -227, -89, -488])).unwrap())
    });
    group.bench_function("k6_staircase", |b| {
        b.iter(|| kostant_count(black_box(&[1, 2, 3, 4, 5, -15])).unwrap())
    });
    group.finish();
}

fn bench_transportation(c: &mut Criterion) {
    let mut group = c.benchmark_group("transportation");
    group.sample_size(10);
    group.bench_function("margins_4x4", |b| {
        b.iter(|| {
            transportation_count(
                black_box(&[220, 215, 93, 64]),
                black_box(&[108, 286, 71, 127]),
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_complete_graphs, bench_transportation);
criterion_main!(benches);
