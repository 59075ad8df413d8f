use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use crdtsync::crdts::{GCounter, GMap, GSet};
use crdtsync::{decompose, delta, Lattice, ReplicaId};

fn sets(n: u32) -> (GSet<u32>, GSet<u32>) {
    let a = (0..n).collect();
    let b = (n / 2..n + n / 2).collect();
    (a, b)
}

fn bench_gset(c: &mut Criterion) {
    let mut g = c.benchmark_group("gset");
    for n in [100u32, 1_000, 10_000] {
        let (a, b) = sets(n);
        g.bench_with_input(BenchmarkId::new("join", n), &n, |bch, _| bch.iter(|| black_box(&a).join(&b)));
        g.bench_with_input(BenchmarkId::new("decompose", n), &n, |bch, _| bch.iter(|| decompose(black_box(&a))));
        g.bench_with_input(BenchmarkId::new("delta", n), &n, |bch, _| bch.iter(|| delta(black_box(&a), &b)));
    }
    g.finish();
}

fn bench_gcounter(c: &mut Criterion) {
    let mut g = c.benchmark_group("gcounter");
    for n in [16u32, 64, 256] {
        let a = GCounter::from_entries((0..n).map(|i| (ReplicaId(i), u64::from(i) + 5)));
        let b = GCounter::from_entries((0..n).map(|i| (ReplicaId(i), u64::from(i % 7) * 3)));
        g.bench_with_input(BenchmarkId::new("join", n), &n, |bch, _| bch.iter(|| black_box(&a).join(&b)));
        g.bench_with_input(BenchmarkId::new("delta", n), &n, |bch, _| bch.iter(|| delta(black_box(&a), &b)));
    }
    g.finish();
}

fn bench_gmap(c: &mut Criterion) {
    let mut g = c.benchmark_group("gmap");
    for keys in [100u32, 1_000] {
        let build = |shift: u32| -> GMap<u32, GSet<u32>> {
            GMap::from_entries((0..keys).map(|k| (k, (0..4).map(|e| e + k % (3 + shift)).collect())))
        };
        let (a, b) = (build(0), build(1));
        g.bench_with_input(BenchmarkId::new("join", keys), &keys, |bch, _| bch.iter(|| black_box(&a).join(&b)));
        g.bench_with_input(BenchmarkId::new("delta", keys), &keys, |bch, _| bch.iter(|| delta(black_box(&a), &b)));
    }
    g.finish();
}

criterion_group!(benches, bench_gset, bench_gcounter, bench_gmap);
criterion_main!(benches);
