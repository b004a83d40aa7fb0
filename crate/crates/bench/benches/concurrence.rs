use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use schwarz_bench::haar;
use schwarz_core::{
    bipartite_concurrence, is_separable_cut, matricize, minor_sum_sq, oracle_concurrence,
    tripartite_concurrence, Cut, Evaluation,
};

fn bipartite(c: &mut Criterion) {
    let mut group = c.benchmark_group("bipartite_concurrence");
    for n in [4usize, 8, 16, 32] {
        let state = haar(&[n, n], 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &state, |b, s| {
            b.iter(|| bipartite_concurrence(black_box(s), 4.0).unwrap())
        });
    }
    group.finish();
}

fn tripartite(c: &mut Criterion) {
    let mut group = c.benchmark_group("tripartite_concurrence");
    let state = haar(&[4, 4, 4], 2);
    for (name, eval) in [("serial", Evaluation::Serial), ("parallel", Evaluation::Parallel)] {
        group.bench_function(name, |b| {
            b.iter(|| tripartite_concurrence(black_box(&state), 4.0, eval).unwrap())
        });
    }
    group.finish();
}

fn minors_vs_oracle(c: &mut Criterion) {
    let state = haar(&[8, 8], 3);
    let cut = Cut::new(1).unwrap();
    c.bench_function("minor_sum_sq 8x8", |b| {
        let m = matricize(&state, cut).unwrap();
        b.iter(|| minor_sum_sq(black_box(&m)))
    });
    c.bench_function("oracle_concurrence 8x8", |b| {
        b.iter(|| oracle_concurrence(black_box(&state)).unwrap())
    });
    c.bench_function("is_separable_cut 8x8", |b| {
        b.iter(|| is_separable_cut(black_box(&state), cut, 1e-9).unwrap())
    });
}

criterion_group!(benches, bipartite, tripartite, minors_vs_oracle);
criterion_main!(benches);
