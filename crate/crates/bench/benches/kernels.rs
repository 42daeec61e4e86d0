use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use idealkit::density::{max_window_count, tile_density_upper_bound};
use idealkit::setexpr::materialize_prefix;
use idealkit::verify::ReciprocalSum;
use idealkit::witness::witness_br_b;
use idealkit::{parse_set_expr, LemmaId, SetExpr};

fn materialize(c: &mut Criterion) {
    let expr = parse_set_expr("DIFF(UNION(AP(6,1),AP(10,3),TILING(21,1,{0,3,6,9,13,16,20})),AP(7,0))").unwrap();
    let mut g = c.benchmark_group("materialize");
    for n in [10_000u64, 1_000_000] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| materialize_prefix(black_box(&expr), 1, n).unwrap())
        });
    }
    g.finish();
}

fn banach_scan(c: &mut Criterion) {
    let fam = LemmaId::BrR.generate(40).unwrap();
    let n = 1 << 20;
    let bm = materialize_prefix(&SetExpr::Finite(fam.union_all()), 1, n).unwrap();
    let mut g = c.benchmark_group("banach_scan");
    for w in [16u64, 1024] {
        g.bench_with_input(BenchmarkId::from_parameter(w), &w, |b, &w| {
            b.iter(|| max_window_count(black_box(&bm), w, n))
        });
    }
    g.finish();
}

fn tile_search(c: &mut Criterion) {
    let union = SetExpr::Finite(LemmaId::TrBr.generate(8).unwrap().union_all());
    let tiling = parse_set_expr("TILING(8,1,{7})").unwrap();
    let mut g = c.benchmark_group("tile_search");
    g.sample_size(20);
    g.bench_function("anti_tile_union", |b| {
        b.iter(|| tile_density_upper_bound(black_box(&union), 10_000, 6, 8).unwrap())
    });
    g.bench_function("sparse_tiling", |b| {
        b.iter(|| tile_density_upper_bound(black_box(&tiling), 10_000, 16, 4).unwrap())
    });
    g.finish();
}

fn reciprocal(c: &mut Criterion) {
    let small: Vec<u64> = (1..=2_000).collect();
    let big = witness_br_b(3).unwrap().block(3).unwrap().as_slice().to_vec();
    let mut g = c.benchmark_group("reciprocal_sum");
    g.sample_size(10);
    g.bench_function("harmonic_2000", |b| b.iter(|| ReciprocalSum::of(black_box(&small)).unwrap()));
    g.bench_function("br_b_block_3", |b| b.iter(|| ReciprocalSum::of(black_box(&big)).unwrap()));
    g.finish();
}

criterion_group!(benches, materialize, banach_scan, tile_search, reciprocal);
criterion_main!(benches);
