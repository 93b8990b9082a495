use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sl2dist::hmodp::FpElement;
use sl2dist::par::Execution;
use sl2dist::splitting::compute_t;
use sl2dist::verify::{run_suite, RunConfig, Suite};

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    let cases = [
        (Suite::Relations, RunConfig { primes: vec![3, 5], kmax: 1, nmax: 2, ..RunConfig::default() }),
        (Suite::Congruence, RunConfig { primes: vec![5], h_range: Some((-20, 20)), ..RunConfig::default() }),
        (Suite::Theta, RunConfig { primes: vec![3], kmax: 2, ..RunConfig::default() }),
    ];
    for (suite, cfg) in cases {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let cfg = RunConfig { exec, ..cfg.clone() };
            group.bench_with_input(BenchmarkId::new(suite.name(), format!("{exec:?}")), &cfg, |b, cfg| {
                b.iter(|| run_suite(suite, cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel");
    for p in [3u64, 5] {
        let t = compute_t(2, p).unwrap();
        group.bench_function(BenchmarkId::new("t2 squared", p), |b| b.iter(|| t.mul(&t)));
        let x = FpElement::e(p, p * p - 1).mul(&FpElement::f(p, p * p - 1));
        group.bench_function(BenchmarkId::new("top products", p), |b| b.iter(|| x.mul(&x)));
    }
    group.finish();
}

criterion_group!(benches, suites, kernels);
criterion_main!(benches);
