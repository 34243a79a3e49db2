use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use dualsep::corpus::corpus_graph;
use dualsep::order::order_side;
use dualsep::shift::{edges_to_side, sep_to_edges, shift_side};
use dualsep::tangle::{build_system, enumerate_tangles};
use dualsep::verify::{verify_graph, VerifyConfig};
use dualsep::{enumerate_seps, EnumCaps, HalfInt, SepMode, Side, TangleKind, Universe};
use dualsep_bench::two_blocks;

fn tangles(c: &mut Criterion) {
    let g = two_blocks(7);
    let mut group = c.benchmark_group("tangles");
    for (name, u, k2) in [("side_x_k1", Universe::SideX, 2), ("partitions_x_k2", Universe::PartitionsX, 4)] {
        let sys = Arc::new(build_system(&g, u, HalfInt::from_doubled(k2), EnumCaps::default()).unwrap());
        group.bench_function(format!("build_{name}"), |b| {
            b.iter(|| build_system(black_box(&g), u, HalfInt::from_doubled(k2), EnumCaps::default()).unwrap())
        });
        group.bench_function(format!("enumerate_{name}"), |b| {
            b.iter(|| enumerate_tangles(black_box(&sys), TangleKind::Tangle, 64).unwrap())
        });
    }
    group.finish();
}

fn shifts(c: &mut Criterion) {
    let g = two_blocks(3);
    let seps: Vec<_> = enumerate_seps(g.x().len(), SepMode::AllSeparations, EnumCaps::default())
        .unwrap()
        .collect();
    let mut group = c.benchmark_group("shifts");
    group.bench_function("order_side_all", |b| {
        b.iter(|| seps.iter().map(|s| order_side(&g, Side::X, s).unwrap()).max())
    });
    group.bench_function("shift_side_all", |b| {
        b.iter(|| seps.iter().filter(|s| shift_side(&g, Side::X, s).unwrap().is_partition()).count())
    });
    group.bench_function("edge_round_trip_all", |b| {
        b.iter(|| {
            seps.iter()
                .map(|s| edges_to_side(&g, &sep_to_edges(&g, Side::X, s).unwrap(), Side::X).unwrap())
                .filter(|t| t.is_partition())
                .count()
        })
    });
    group.finish();
}

fn verify(c: &mut Criterion) {
    let graph = corpus_graph(3);
    let config = VerifyConfig {
        seeds: vec![3],
        k_grid_doubled: vec![1, 2],
        ..VerifyConfig::default()
    };
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("k33_all_theorems", |b| b.iter(|| verify_graph(black_box(&graph), &config).unwrap()));
    group.finish();
}

criterion_group!(benches, tangles, shifts, verify);
criterion_main!(benches);
