use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use implic::instances::{coefficient_inequality, non_shannon, triangle};
use implic::{ei_check, min_lambda, quadratic_certificate, verify_inequality, ModelClass};
use implic_bench::{holding_implication, rng};

fn step_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("step_check");
    for n in [6, 10, 14, 18] {
        let imp = holding_implication(n, 4, &mut rng(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &imp, |b, imp| {
            b.iter(|| ei_check(black_box(imp), ModelClass::StepFunctions).unwrap())
        });
    }
    group.finish();
}

fn polymatroid_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("polymatroid_check");
    group.sample_size(10);
    group.bench_function("triangle", |b| {
        b.iter(|| ei_check(&triangle(), ModelClass::Polymatroids).unwrap())
    });
    group.bench_function("non_shannon", |b| {
        b.iter(|| ei_check(&non_shannon(), ModelClass::Polymatroids).unwrap())
    });
    for n in [4, 5] {
        let imp = holding_implication(n, 3, &mut rng(40 + n as u64));
        group.bench_with_input(BenchmarkId::new("min_lambda", n), &imp, |b, imp| {
            b.iter(|| min_lambda(imp).unwrap())
        });
    }
    group.finish();
}

fn six_variable_inequality(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficient_inequality");
    group.sample_size(10);
    let ineq = coefficient_inequality();
    group.bench_function("six_variables", |b| {
        b.iter(|| verify_inequality(&ineq.universe, &ineq.terms, &ineq.target).unwrap())
    });
    group.finish();
}

fn constructive(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadratic_certificate");
    for n in [4, 6, 8, 10] {
        let imp = holding_implication(n, 4, &mut rng(80 + n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &imp, |b, imp| {
            b.iter(|| quadratic_certificate(imp).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    step_check,
    polymatroid_check,
    six_variable_inequality,
    constructive
);
criterion_main!(benches);
