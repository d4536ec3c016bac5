use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qstep_core::{
    coefficients, coefficients_gamma_form, density_scan, integrate, kinematics, IntegrationConfig,
    StepPotential,
};

fn bench_coefficients(c: &mut Criterion) {
    let p = StepPotential::new(1.0, 0.5).unwrap();
    let kin = kinematics(&p, 2.0).unwrap();
    c.bench_function("coefficients/sinh", |b| b.iter(|| coefficients(black_box(&kin))));
    c.bench_function("coefficients/gamma", |b| {
        b.iter(|| coefficients_gamma_form(black_box(&kin)))
    });
}

fn bench_wave(c: &mut Criterion) {
    let p = StepPotential::new(1.0, 1.0).unwrap();
    c.bench_function("density_scan/400", |b| {
        b.iter(|| density_scan(&p, black_box(2.0), -10.0, 10.0, 400))
    });
}

fn bench_numerov(c: &mut Criterion) {
    let p = StepPotential::new(1.0, 1.0).unwrap();
    let cfg = IntegrationConfig::for_state(&p, 2.0, 1e-3).unwrap();
    let mut group = c.benchmark_group("numerov");
    group.sample_size(20);
    group.bench_function("step_1e-3", |b| b.iter(|| integrate(&p, black_box(2.0), &cfg)));
    group.finish();
}

criterion_group!(benches, bench_coefficients, bench_wave, bench_numerov);
criterion_main!(benches);
