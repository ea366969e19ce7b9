//! Rayon vs sequential comparison for the data-parallel inner loops:
//! adjacency construction, pairwise minimum-distance scans, and rank
//! histogram enumeration.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use rank_codes::codes::{pairwise_min_distance, pairwise_min_distance_seq, GabidulinCode};
use rank_codes::field::make_field;
use rank_codes::graph::{DistanceGraph, GraphKind};
use rank_codes::vector::{rank_histogram, rank_histogram_seq, RankVector};

fn adjacency(c: &mut Criterion) {
    let kind = GraphKind::ConstantRank {
        q: 2,
        m: 3,
        n: 3,
        d: 2,
        r: 2,
    };
    let mut group = c.benchmark_group("adjacency_294_vertices");
    group.bench_function("parallel", |b| {
        b.iter(|| DistanceGraph::build(black_box(kind.clone()), 512).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| DistanceGraph::build_seq(black_box(kind.clone()), 512).unwrap())
    });
    group.finish();
}

fn min_distance(c: &mut Criterion) {
    let spec = make_field(2, 1, 4).unwrap();
    let code = GabidulinCode::new(spec, 4, 3).unwrap();
    let words: Vec<RankVector> = code.codewords(1 << 12).unwrap().collect();
    assert_eq!(words.len(), 256);
    let mut group = c.benchmark_group("min_distance_256_words");
    group.bench_function("parallel", |b| {
        b.iter(|| pairwise_min_distance(black_box(&words)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| pairwise_min_distance_seq(black_box(&words)))
    });
    group.finish();
}

fn histogram(c: &mut Criterion) {
    let spec = make_field(2, 1, 4).unwrap();
    let mut group = c.benchmark_group("rank_histogram_65536_vectors");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| rank_histogram(black_box(&spec), 4, 1 << 20).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| rank_histogram_seq(black_box(&spec), 4, 1 << 20).unwrap())
    });
    group.finish();
}

criterion_group!(benches, adjacency, min_distance, histogram);
criterion_main!(benches);
