//! Sequential vs parallel execution of the data-parallel workloads.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bloom_mst::bench::{run_bench, BenchConfig};
use bloom_mst::bloom::{BloomFilter, BloomParams};
use bloom_mst::exec::Execution;
use bloom_mst::rng::SeededRng;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("bench_sweep");
    group.sample_size(10);
    for (name, execution) in MODES {
        let config = BenchConfig {
            sizes: vec![1_000, 5_000],
            runs: 4,
            execution,
            ..BenchConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &config, |b, cfg| {
            b.iter(|| run_bench(black_box(cfg)).unwrap())
        });
    }
    group.finish();
}

fn collision_trials(c: &mut Criterion) {
    let n = 11_000u64;
    let params = BloomParams::new(n, 0.01).unwrap();
    let seeds: Vec<u64> = (0..32).collect();
    let mut group = c.benchmark_group("collision_trials");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                execution.map(&seeds, |&seed| {
                    let mut f = BloomFilter::new(&params, seed);
                    let mut keys = SeededRng::new(seed);
                    let mut hits = 0u32;
                    for _ in 0..n {
                        let k = keys.next_u64();
                        hits += f.contains(k) as u32;
                        f.add(k);
                    }
                    hits
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, collision_trials);
criterion_main!(benches);
