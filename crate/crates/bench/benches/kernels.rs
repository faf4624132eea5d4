use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use monhom::gamma::{build_complex_with, ComplexOptions};
use monhom::hodge::eulerian_idempotents;
use monhom::module::Side;
use monhom::{build_complex, hodge_decomposition, smith_normal_form, Direction, MonoidBuilder, Ring};
use monhom_bench::{klein, regular, snf_fixture};

fn snf(c: &mut Criterion) {
    for n in [16, 32] {
        let a = snf_fixture(n);
        c.bench_function(&format!("smith_normal_form {n}x{n}"), |b| b.iter(|| smith_normal_form(black_box(&a))));
    }
}

fn complexes(c: &mut Criterion) {
    let k = klein();
    let n = regular(&k, Side::Right, Ring::Z);
    c.bench_function("build_complex Z/2xZ/2 regular, degree 4", |b| {
        b.iter(|| build_complex(&k, black_box(&n), 4, Direction::Homological).unwrap())
    });
    let cx = build_complex(&k, &n, 4, Direction::Homological).unwrap();
    c.bench_function("homology Z/2xZ/2 regular, degree 3", |b| b.iter(|| cx.homology(black_box(3)).unwrap()));
}

fn idempotents(c: &mut Criterion) {
    let mut g = c.benchmark_group("eulerian_idempotents");
    g.sample_size(10);
    for n in [4, 5] {
        g.bench_function(format!("S_{n}"), |b| b.iter(|| eulerian_idempotents(black_box(n)).unwrap()));
    }
    g.finish();
}

fn hodge(c: &mut Criterion) {
    let t = MonoidBuilder::TruncatedAdd(2).build().unwrap();
    let n = regular(&t, Side::Right, Ring::Q);
    let opts = ComplexOptions { ring: Ring::Q, ..ComplexOptions::default() };
    let cx = build_complex_with(&t, &n, 4, Direction::Homological, opts).unwrap();
    let mut g = c.benchmark_group("hodge_decomposition");
    g.sample_size(10);
    g.bench_function("truncated_add(2) regular, degree 3", |b| {
        b.iter(|| hodge_decomposition(black_box(&cx), 3).unwrap())
    });
    g.finish();
}

criterion_group!(benches, snf, complexes, idempotents, hodge);
criterion_main!(benches);
