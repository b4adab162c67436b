use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use edgestat::brute::brute_force_table;
use edgestat::construct::{clique_union, gnp};
use edgestat::{census, closed_form_moments, exact_distribution, mc_distribution};
use std::hint::black_box;

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_distribution");
    for (n, k) in [(20, 6), (30, 5), (40, 4)] {
        let g = gnp(n, 0.3, 1).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_k{k}")),
            &k,
            |b, &k| b.iter(|| exact_distribution(black_box(&g), k).unwrap()),
        );
    }
    group.finish();
}

fn moments(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_form");
    for n in [50, 200] {
        let g = gnp(n, 0.2, 2).unwrap();
        group.bench_with_input(BenchmarkId::new("census", n), &g, |b, g| {
            b.iter(|| census(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("moments", n), &g, |b, g| {
            b.iter(|| closed_form_moments(black_box(g), 10).unwrap())
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let g = clique_union(1120, 28).unwrap();
    c.bench_function("mc_clique_union_100k", |b| {
        b.iter(|| mc_distribution(black_box(&g), 8, 100_000, 1).unwrap())
    });
}

fn brute(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    group.bench_function("n6", |b| b.iter(|| brute_force_table(6, true).unwrap()));
    group.finish();
}

criterion_group!(benches, exact, moments, monte_carlo, brute);
criterion_main!(benches);
