use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use psp_bench::{fixture_spec, generated, FIXTURES};
use psp_core::{check_sat, encode, Budget, Mode};

fn fixtures(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_fixture");
    for name in FIXTURES {
        let goal = encode(&fixture_spec(name), Mode::Conjunction).unwrap().goal;
        g.bench_with_input(BenchmarkId::from_parameter(name), &goal, |b, f| {
            b.iter(|| check_sat(f, Budget::default()).unwrap())
        });
    }
    g.finish();
}

fn generated_specs(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_generated");
    g.sample_size(10);
    for n_req in [5, 10, 20] {
        let goal = encode(&generated(3, n_req, 4), Mode::Conjunction).unwrap().goal;
        g.bench_with_input(BenchmarkId::from_parameter(n_req), &goal, |b, f| {
            b.iter(|| check_sat(f, Budget::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, fixtures, generated_specs);
criterion_main!(benches);
