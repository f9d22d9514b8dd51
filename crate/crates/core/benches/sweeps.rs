use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use plie_core::exact::int;
use plie_core::metric::MetricForm;
use plie_core::search::{enumerate_lie_algebras, nontrivial_bialgebras, prla_metrics};
use plie_core::tangent::verify_tangent_suite;
use plie_core::{BracketEntry, Exec, LieAlgebra, LieBialgebra};

const VALUES: [i64; 3] = [-1, 0, 1];

fn strategies() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn entry(i: usize, j: usize, k: usize, v: i64) -> BracketEntry {
    BracketEntry { i, j, out: vec![(k, int(v))] }
}

fn nontrivial() -> LieBialgebra {
    let g = LieAlgebra::from_brackets(3, &[entry(0, 1, 0, -1), entry(1, 2, 2, 1)]).unwrap();
    let gs = LieAlgebra::from_brackets(3, &[entry(0, 1, 2, -1), entry(1, 2, 0, -1)]).unwrap();
    LieBialgebra::new(g, gs).unwrap()
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_with_input(BenchmarkId::new("lie_algebras_dim3", name), &exec, |b, &e| {
            b.iter(|| enumerate_lie_algebras(3, &VALUES, e))
        });
        group.bench_with_input(BenchmarkId::new("bialgebras_dim2", name), &exec, |b, &e| {
            b.iter(|| nontrivial_bialgebras(2, &VALUES, e))
        });
        let h3 = LieAlgebra::from_brackets(3, &[entry(0, 1, 2, 1)]).unwrap();
        group.bench_with_input(BenchmarkId::new("heisenberg_metrics", name), &exec, |b, &e| {
            b.iter(|| prla_metrics(&h3, &VALUES, e))
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let bi = nontrivial();
    let a = MetricForm::identity(3);
    let mut group = c.benchmark_group("tangent_suite");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_with_input(BenchmarkId::new("nontrivial_bi", name), &exec, |b, &e| {
            b.iter(|| verify_tangent_suite(&bi, &a, e).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, searches, verification);
criterion_main!(benches);
