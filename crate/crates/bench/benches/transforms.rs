use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use implic::mobius::{superset_mobius, superset_mobius_naive};
use implic::models::i_measure;
use implic::{support, BasketSet, VarSet, VarUniverse};
use implic_bench::{random_f64_h, random_h, rng};
use rand::Rng;

fn mobius(c: &mut Criterion) {
    let mut group = c.benchmark_group("superset_mobius_f64");
    for n in [8, 12, 16, 20] {
        let h = random_f64_h(n, &mut rng(n as u64));
        group.bench_with_input(BenchmarkId::new("fast", n), &h, |b, h| {
            b.iter(|| {
                let mut a = h.values().to_vec();
                superset_mobius(&mut a, n);
                a
            })
        });
        if n <= 12 {
            group.bench_with_input(BenchmarkId::new("naive", n), &h, |b, h| {
                b.iter(|| superset_mobius_naive(black_box(h.values()), n))
            });
        }
    }
    group.finish();
}

fn exact_imeasure(c: &mut Criterion) {
    let mut group = c.benchmark_group("i_measure_exact");
    for n in [4, 8, 12] {
        let h = random_h(n, &mut rng(100 + n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| i_measure(h))
        });
    }
    group.finish();
}

fn basket_support(c: &mut Criterion) {
    let mut group = c.benchmark_group("basket_support");
    for n in [8, 12, 16] {
        let u = VarUniverse::letters(n).unwrap();
        let mut r = rng(200 + n as u64);
        let baskets = (0..10_000)
            .map(|_| VarSet::from_bits(r.gen_range(0..1u32 << n)))
            .collect();
        let data = BasketSet::new(u, baskets).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &data, |b, data| {
            b.iter(|| support(data))
        });
    }
    group.finish();
}

criterion_group!(benches, mobius, exact_imeasure, basket_support);
criterion_main!(benches);
