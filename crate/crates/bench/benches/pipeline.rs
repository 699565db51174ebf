//! End-to-end timings for the stages that dominate a report run: the
//! universal expansion, both routes to the transported matrix B, exact
//! nullspaces, and the two-sided symmetry comparison.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use pvforge_bench::{log_system, log_tower, matrix, rf, torus_system};
use pvforge_core::{
    compare_lie, compute_b, hull_lie, pv_lie, solve_fundamental, taylor, taylor_matrix,
    ScalarField, Variables,
};

fn bench_taylor(c: &mut Criterion) {
    let tower = log_tower();
    let element = rf(tower.vars(), "(l + x^2)/(x^3 - x)");
    c.bench_function("taylor: log-tower element, order 12", |b| {
        b.iter(|| taylor(black_box(&element), &tower, 12).unwrap())
    });
}

fn bench_b_routes(c: &mut Criterion) {
    let s = log_system();
    c.bench_function("compute_b: log system, order 16", |b| {
        b.iter(|| compute_b(black_box(&s), 16).unwrap())
    });
    let ia = taylor_matrix(s.a(), s.tower(), 16).unwrap();
    c.bench_function("solve_fundamental: log system, order 16", |b| {
        b.iter(|| solve_fundamental(black_box(&ia)))
    });
}

fn bench_nullspace(c: &mut Criterion) {
    let vars = Variables::new(&["x", "l"]);
    let m = matrix(
        &vars,
        &[
            &["1", "x", "l", "0", "1/x", "0"],
            &["0", "1", "x^2", "l", "0", "1"],
            &["1", "x + 1", "l + x^2", "l", "1/x", "1"],
            &["x", "0", "0", "1", "l", "x*l"],
        ],
    );
    c.bench_function("nullspace: 4x6 rational-function matrix", |b| {
        b.iter(|| black_box(&m).nullspace(ScalarField::Functions))
    });
}

fn bench_lie(c: &mut Criterion) {
    let log = log_system();
    let torus = torus_system();
    c.bench_function("pv_lie: log system", |b| {
        b.iter(|| pv_lie(black_box(&log)).unwrap())
    });
    c.bench_function("hull_lie: log system, order 12", |b| {
        b.iter(|| hull_lie(black_box(&log), 12).unwrap())
    });
    c.bench_function("compare_lie: torus system, order 12", |b| {
        b.iter(|| compare_lie(black_box(&torus), 12).unwrap())
    });
}

criterion_group!(
    benches,
    bench_taylor,
    bench_b_routes,
    bench_nullspace,
    bench_lie
);
criterion_main!(benches);
