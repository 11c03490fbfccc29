use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use twoqubit::*;

fn eigensolver(c: &mut Criterion) {
    let st = initial_state(&ScenarioSpec::Entangled { p: 0.7 }).unwrap();
    let rho = to_matrix(&evolve(&st, &CouplingParams::default(), 0.83).unwrap());
    c.bench_function("eig_hermitian", |b| {
        b.iter(|| eig_hermitian(black_box(&rho)).unwrap())
    });
}

fn unitaries(c: &mut Criterion) {
    let p = CouplingParams::new(0.3, -0.7, 1.1);
    c.bench_function("unitary_closed_form", |b| {
        b.iter(|| unitary(black_box(&p), black_box(1.7)))
    });
    c.bench_function("unitary_oracle", |b| {
        b.iter(|| unitary_oracle(black_box(&p), black_box(1.7)).unwrap())
    });
}

fn point(c: &mut Criterion) {
    let st = initial_state(&ScenarioSpec::CLASS3).unwrap();
    let p = CouplingParams::default();
    c.bench_function("evolve", |b| {
        b.iter(|| evolve(black_box(&st), &p, black_box(2.2)).unwrap())
    });
    c.bench_function("record_at", |b| {
        b.iter(|| record_at(black_box(&st), &p, black_box(2.2)).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    let cfg = SweepConfig::default();
    let spec = ScenarioSpec::Entangled { p: 0.7 };
    c.bench_function("sweep_601", |b| {
        b.iter(|| sweep(black_box(&spec), &cfg).unwrap())
    });
}

criterion_group!(benches, eigensolver, unitaries, point, sweeps);
criterion_main!(benches);
