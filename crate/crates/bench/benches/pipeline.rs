use std::hint::black_box;

use bcn_entropy::generate::random_network;
use bcn_entropy::oracle::count_walks;
use bcn_entropy::spectral::{max_column_sum, maximal_closed_set, perron_root};
use bcn_entropy::{analyze, compile};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_compile(c: &mut Criterion) {
    let mut group = c.benchmark_group("compile");
    for (n, m) in [(6, 2), (8, 3), (10, 3)] {
        let net = random_network(n, m, 11).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_m{m}")),
            &net,
            |b, net| b.iter(|| compile(black_box(net)).unwrap()),
        );
    }
    group.finish();
}

fn bench_spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral");
    for (n, m) in [(6, 2), (8, 3), (10, 3)] {
        let model = compile(&random_network(n, m, 11).unwrap()).unwrap();
        let id = format!("n{n}_m{m}");
        group.bench_with_input(BenchmarkId::new("perron_root", &id), &model, |b, md| {
            b.iter(|| perron_root(black_box(md.merged())).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("closed_set", &id), &model, |b, md| {
            let v = max_column_sum(md.merged());
            b.iter(|| maximal_closed_set(black_box(md.merged()), v))
        });
        group.bench_with_input(BenchmarkId::new("analyze", &id), &model, |b, md| {
            b.iter(|| analyze(black_box(md)).unwrap())
        });
    }
    group.finish();
}

fn bench_walks(c: &mut Criterion) {
    let model = compile(&random_network(8, 3, 5).unwrap()).unwrap();
    c.bench_function("count_walks_n8_m3_j40", |b| {
        b.iter(|| count_walks(black_box(model.merged()), 40).unwrap())
    });
}

criterion_group!(benches, bench_compile, bench_spectral, bench_walks);
criterion_main!(benches);
