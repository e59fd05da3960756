use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use teamform_bench::Workload;
use teamform_core::graph::fixtures::toy;
use teamform_core::{Algorithm, AlgorithmConfig, Task};

fn toy_graph(c: &mut Criterion) {
    let g = toy();
    let task = Task::new(["a", "b", "c", "d", "e"]).unwrap();
    let cfg = AlgorithmConfig::default();
    let mut group = c.benchmark_group("toy");
    for a in Algorithm::ALL {
        group.bench_function(a.name(), |b| b.iter(|| a.run(&g, &task, &cfg).unwrap()));
    }
    group.finish();
}

fn community_scaling(c: &mut Criterion) {
    let w = Workload::synthetic(25_000);
    let tasks = w.tasks(10, 16, 1);
    let cfg = AlgorithmConfig::default();
    let mut group = c.benchmark_group("tfc-r by graph");
    group.sample_size(10);
    for (name, g) in &w.graphs {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{name}-{}", g.len())), g, |b, g| {
            b.iter(|| {
                for t in &tasks {
                    Algorithm::TfcR.run(g, t, &cfg).unwrap();
                }
            })
        });
    }
    group.finish();
}

fn against_baselines(c: &mut Criterion) {
    let w = Workload::synthetic(25_000);
    let (name, g) = &w.graphs[0];
    let tasks = w.tasks(10, 8, 2);
    let cfg = AlgorithmConfig::default();
    let mut group = c.benchmark_group(format!("k=10 on {name}"));
    group.sample_size(10);
    for a in [Algorithm::TfcR, Algorithm::TfcN, Algorithm::MinLdStar, Algorithm::MinSd] {
        group.bench_function(a.name(), |b| {
            b.iter(|| {
                for t in &tasks {
                    a.run(g, t, &cfg).unwrap();
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, toy_graph, community_scaling, against_baselines);
criterion_main!(benches);
