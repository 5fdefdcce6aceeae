use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;
use onp::{sample, table, Context};
use onp_bench::workloads;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("mul");
    for w in workloads() {
        let ctx = Context::new(w.p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pairs: Vec<_> = (0..64)
            .map(|_| {
                (
                    sample::random_nonzero(&mut rng, w.p, &w.gens, 6),
                    sample::random_nonzero(&mut rng, w.p, &w.gens, 6),
                )
            })
            .collect();
        // Warm the layout cache so only the product is measured.
        ctx.mul(&pairs[0].0, &pairs[0].1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(w.name), &pairs, |b, pairs| {
            b.iter(|| {
                for (x, y) in pairs {
                    black_box(ctx.mul(x, y).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn pow_and_inverse(c: &mut Criterion) {
    let mut group = c.benchmark_group("pow");
    // Inverting in the chi5-chi7 field takes seconds.
    group.sample_size(10);
    for w in workloads() {
        let ctx = Context::new(w.p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = sample::random_nonzero(&mut rng, w.p, &w.gens, 6);
        let e = BigUint::from(w.p).pow(40) + 12345u32;
        group.bench_function(BenchmarkId::new("big-exponent", w.name), |b| {
            b.iter(|| ctx.pow(black_box(&a), &e).unwrap())
        });
        group.bench_function(BenchmarkId::new("inverse", w.name), |b| b.iter(|| ctx.inverse(black_box(&a)).unwrap()));
    }
    group.finish();
}

fn alpha(c: &mut Criterion) {
    let mut group = c.benchmark_group("alpha");
    group.sample_size(10);
    for (p, u) in [(2u32, 19u32), (3, 43), (7, 43)] {
        group.bench_function(BenchmarkId::new(format!("On_{p}"), u), |b| {
            // A fresh context each time so the memoized record is not reused.
            b.iter(|| Context::new(p).unwrap().alpha_u(u).unwrap())
        });
    }
    group.bench_function("table On_5 to 43", |b| {
        b.iter(|| table::generate(&Context::new(5).unwrap(), 43).unwrap())
    });
    group.finish();
}

criterion_group!(benches, mul, pow_and_inverse, alpha);
criterion_main!(benches);
