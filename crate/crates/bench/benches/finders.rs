use std::hint::black_box;

use bubblescope_bench::{chain_bidirected, chain_directed, DEFAULT_SEED};
use bubblescope_core::{find_snarls, find_superbubbles};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

const SIZES: [usize; 3] = [10_000, 40_000, 160_000];

fn snarls(c: &mut Criterion) {
    let mut group = c.benchmark_group("snarls");
    group.sample_size(10);
    for edges in SIZES {
        let g = chain_bidirected(edges, DEFAULT_SEED);
        group.throughput(Throughput::Elements(edges as u64));
        group.bench_with_input(BenchmarkId::from_parameter(edges), &g, |b, g| b.iter(|| find_snarls(black_box(g))));
    }
    group.finish();
}

fn superbubbles(c: &mut Criterion) {
    let mut group = c.benchmark_group("superbubbles");
    group.sample_size(10);
    for edges in SIZES {
        let g = chain_directed(edges, DEFAULT_SEED);
        group.throughput(Throughput::Elements(edges as u64));
        group.bench_with_input(BenchmarkId::from_parameter(edges), &g, |b, g| {
            b.iter(|| find_superbubbles(black_box(g)))
        });
    }
    group.finish();
}

criterion_group!(benches, snarls, superbubbles);
criterion_main!(benches);
