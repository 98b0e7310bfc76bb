//! Parallel vs sequential comparison for the data-parallel inner loops:
//! per-graph volume contributions, the exhaustive correlator bound scan,
//! and series convolution.
//!
//! With the default `parallel` feature the "default" benchmarks run on
//! rayon; "one-thread" pins a single-thread pool (scheduling overhead
//! without concurrency) and "sequential" bypasses rayon entirely. Building
//! with `--no-default-features` makes all three paths plain iterators.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use moduli_core::correlators::Correlators;
use moduli_core::exec;
use moduli_core::graphs::enumerate_stable_graphs;
use moduli_core::harmonic::{series_tables, SeriesKind};
use moduli_core::volumes::graph_contribution;
use moduli_core::PiValue;

fn bench_volume(c: &mut Criterion) {
    let correlators = Correlators::new();
    let graphs = enumerate_stable_graphs(3, 0).unwrap();
    // Shared warm cache: iterations measure the graph-polynomial pipeline,
    // not first-time correlator recursion.
    for (graph, _) in &graphs {
        let _ = graph_contribution(&correlators, graph, 3, 0).unwrap();
    }

    let mut group = c.benchmark_group("volume_contributions_g3");
    group.sample_size(10);
    group.bench_function("default", |b| {
        b.iter_batched(
            || graphs.clone(),
            |gs| {
                let parts = exec::map_collect(gs, |(graph, _)| {
                    graph_contribution(&correlators, &graph, 3, 0).unwrap()
                });
                black_box(parts.into_iter().fold(PiValue::zero(), |acc, v| acc + v))
            },
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || graphs.clone(),
            |gs| {
                let parts = exec::map_collect_seq(gs, |(graph, _)| {
                    graph_contribution(&correlators, &graph, 3, 0).unwrap()
                });
                black_box(parts.into_iter().fold(PiValue::zero(), |acc, v| acc + v))
            },
            BatchSize::SmallInput,
        )
    });
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("one-thread-pool", |b| {
            b.iter_batched(
                || graphs.clone(),
                |gs| {
                    pool.install(|| {
                        let parts = exec::map_collect(gs, |(graph, _)| {
                            graph_contribution(&correlators, &graph, 3, 0).unwrap()
                        });
                        black_box(
                            parts.into_iter().fold(PiValue::zero(), |acc, v| acc + v),
                        )
                    })
                },
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn bench_bound_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("exponential_bound_scan_dim9");
    group.sample_size(10);
    group.bench_function("default", |b| {
        b.iter(|| {
            let correlators = Correlators::new();
            black_box(correlators.exhaustive_bound_check(9).keys_checked)
        })
    });
    group.finish();
}

fn bench_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("z_series_tables_n800");
    group.sample_size(10);
    group.bench_function("k_max_6", |b| {
        b.iter(|| black_box(series_tables(SeriesKind::Z, 6, 800, 40).len()))
    });
    group.finish();
}

criterion_group!(benches, bench_volume, bench_bound_scan, bench_series);
criterion_main!(benches);
