use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use shufflecraft_bench::{alternating, carrier, catalog_morphism, late_square};
use shufflecraft_core::construct::Constructor;
use shufflecraft_core::enumerate::{enumeration_row, find_self_shuffle_betas};
use shufflecraft_core::morphism::certify_square_free_morphism;
use shufflecraft_core::shuffle::shuffle_conducted;
use std::hint::black_box;

fn square_detection(c: &mut Criterion) {
    let mut group = c.benchmark_group("square_free");
    for len in [64, 1024, 16384] {
        let free = carrier(len);
        let late = late_square(len);
        group.bench_with_input(BenchmarkId::new("square_free", len), &free, |b, w| {
            b.iter(|| black_box(w).is_square_free())
        });
        group.bench_with_input(BenchmarkId::new("late_square", len), &late, |b, w| {
            b.iter(|| black_box(w).find_square())
        });
    }
    group.finish();
}

fn shuffling(c: &mut Criterion) {
    let u = carrier(4096);
    let beta = alternating(4096);
    c.bench_function("shuffle_conducted/4096", |b| {
        b.iter(|| shuffle_conducted(black_box(&u), &u, &beta).unwrap())
    });
    let short = carrier(12);
    c.bench_function("find_self_shuffle_betas/12", |b| {
        b.iter(|| find_self_shuffle_betas(black_box(&short), None))
    });
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration_row");
    group.sample_size(10);
    for len in [12, 16] {
        group.bench_function(BenchmarkId::from_parameter(len), |b| {
            b.iter(|| enumeration_row(black_box(len)).unwrap())
        });
    }
    group.finish();
}

fn certification(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify");
    group.sample_size(10);
    for name in ["alpha", "h19", "B", "sigma_17"] {
        let h = catalog_morphism(name);
        group.bench_function(name, |b| b.iter(|| certify_square_free_morphism(black_box(h))));
    }
    group.finish();
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct_witness");
    group.sample_size(10);
    for n in [18, 977, 1999] {
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| Constructor::new().unwrap().construct_witness(black_box(n)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, square_detection, shuffling, enumeration, certification, construction);
criterion_main!(benches);
