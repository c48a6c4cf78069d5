use criterion::{criterion_group, criterion_main, Criterion};
use farmeff_bench::{farms, scores};
use farmeff_core::second_stage::{fit_integrated_stochastic, fit_log_linear, ModelKind, ModelSpec};

fn second_stage(c: &mut Criterion) {
    let d = farms(45);
    let theta = scores(d.len());
    let integrated = ModelSpec::new(ModelKind::Integrated);
    let log_linear = ModelSpec::new(ModelKind::LogLinear);
    c.bench_function("integrated fit 45 farms", |b| {
        b.iter(|| fit_integrated_stochastic(&d, &theta, &integrated).unwrap())
    });
    c.bench_function("log-linear fit 45 farms", |b| {
        b.iter(|| fit_log_linear(&d, &theta, &log_linear).unwrap())
    });
}

criterion_group!(benches, second_stage);
criterion_main!(benches);
