use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use farmeff_bench::farms;
use farmeff_core::dea::{evaluate_all, evaluate_all_with_jobs, evaluate_ccr, DeaConfig};

fn batch(c: &mut Criterion) {
    let cfg = DeaConfig::default();
    let mut group = c.benchmark_group("evaluate_all");
    group.sample_size(20);
    for k in [45, 120] {
        let d = farms(k);
        group.bench_with_input(BenchmarkId::new("sequential", k), &d, |b, d| {
            b.iter(|| evaluate_all(d, &cfg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("jobs4", k), &d, |b, d| {
            b.iter(|| evaluate_all_with_jobs(d, &cfg, 4).unwrap())
        });
    }
    group.finish();
}

fn single(c: &mut Criterion) {
    let cfg = DeaConfig::default();
    let d = farms(45);
    c.bench_function("ccr one farm of 45", |b| b.iter(|| evaluate_ccr(&d, 10, &cfg).unwrap()));
}

criterion_group!(benches, batch, single);
criterion_main!(benches);
