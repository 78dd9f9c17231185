use std::f64::consts::PI;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use talbot_gkp::*;

fn codewords(c: &mut Criterion) {
    let spec = CombSpec::new(0.05, 10.0).unwrap();
    c.bench_function("build 0_t (κ=10, σ=0.05)", |b| {
        b.iter(|| build_physical_state(black_box(LogicalLabel::ZeroT), &spec).unwrap())
    });
    let state = build_physical_state(LogicalLabel::ZeroT, &spec).unwrap();
    c.bench_function("chirp + time domain", |b| {
        b.iter(|| to_time_domain(&apply_chirp(&state, Chirp::talbot(1.0).unwrap()).unwrap()).unwrap())
    });
}

fn fidelities(c: &mut Criterion) {
    let spec = CombSpec::new(0.05, 10.0).unwrap();
    c.bench_function("gate fidelity X_t", |b| {
        b.iter(|| gate_fidelity(Chirp::talbot(1.0).unwrap(), &GateMatrix::x_t(), black_box(&spec)).unwrap())
    });
    let kappas = linspace(10.0, 30.0, 20);
    let sigmas = linspace(0.01, 0.1, 20);
    c.bench_function("error map 20x20", |b| {
        b.iter(|| error_map(black_box(&kappas), &sigmas, DEFAULT_THRESHOLD_FRACTION))
    });
}

fn phase_space(c: &mut Criterion) {
    let spec = CombSpec::new(0.01, 10.0).unwrap();
    let state = build_physical_state(LogicalLabel::OneT, &spec).unwrap();
    let taus = linspace(-2.0 * PI, 2.0 * PI, 401);
    c.bench_function("HOM map 5x401", |b| {
        b.iter(|| hom_coincidence(&state, black_box(&[-1.0, -0.5, 0.0, 0.5, 1.0]), &taus).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = codewords, fidelities, phase_space
}
criterion_main!(benches);
