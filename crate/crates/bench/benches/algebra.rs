use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mfkit::catalog::{build_catalog, get_sequences};
use mfkit::kgroup::{harvest_relations, snf};
use mfkit::locus::nonfree_locus;
use mfkit::{make_ring, minimize, Family, Form};
use num_bigint::BigInt;

fn factorizations(c: &mut Criterion) {
    let ctx = make_ring(Family::D, 2, Form::X).unwrap();
    let cat = build_catalog(&ctx, 8).unwrap();
    let psi = cat.entry("psi+:8").unwrap().mf.clone();
    c.bench_function("validate psi+:8 over D-inf:2", |b| b.iter(|| black_box(&psi).is_valid()));
    c.bench_function("nonfree locus of psi+:8", |b| b.iter(|| nonfree_locus(black_box(&psi)).unwrap()));

    let uv = make_ring(Family::A, 3, Form::Uv).unwrap();
    let cat = build_catalog(&uv, 4).unwrap();
    let mut group = c.benchmark_group("knorrer then minimize");
    for label in ["F(R/(x0))", "F(phi:4)"] {
        let m = cat.entry(label).unwrap().mf.clone();
        group.bench_with_input(BenchmarkId::from_parameter(label), &m, |b, m| {
            b.iter(|| minimize(&m.knorrer().unwrap()).unwrap())
        });
    }
    group.finish();
}

fn sequences(c: &mut Criterion) {
    let ctx = make_ring(Family::D, 1, Form::X).unwrap();
    let seqs = get_sequences(&ctx, 4).unwrap();
    let last = seqs.last().unwrap().clone();
    c.bench_function("verify D-inf:1 sequence certificates", |b| {
        b.iter(|| seqs.iter().for_each(|s| s.verify().unwrap()))
    });
    let mut group = c.benchmark_group("graded exactness");
    for cutoff in [10, 20] {
        group.bench_with_input(BenchmarkId::from_parameter(cutoff), &cutoff, |b, &t| {
            b.iter(|| last.graded_check(t).unwrap())
        });
    }
    group.finish();
}

fn groups(c: &mut Criterion) {
    let m: Vec<Vec<BigInt>> =
        (0..8).map(|i| (0..8).map(|j| BigInt::from(((i * 7 + j * 13) % 41) as i64 - 20)).collect()).collect();
    c.bench_function("snf 8x8", |b| b.iter(|| snf(black_box(&m), 8)));
    let ctx = make_ring(Family::D, 4, Form::X).unwrap();
    build_catalog(&ctx, 6).unwrap();
    c.bench_function("K0 relations over D-inf:4", |b| b.iter(|| harvest_relations(&ctx, 6).unwrap()));
}

criterion_group!(benches, factorizations, sequences, groups);
criterion_main!(benches);
