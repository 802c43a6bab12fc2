//! End-to-end and per-stage benchmarks over deterministic generated
//! instances, so numbers are comparable across runs and machines.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use cyclepack_cli::gen;
use cyclepack_cli::solve::{solve, SolveOptions, Strategy};
use cyclepack_core::erdos_posa::cycles_or_fvs;
use cyclepack_core::exact::ie_decide;
use cyclepack_core::girth::{greedy_fvs, shortest_cycle_with_fvs};
use cyclepack_core::reduce::reduce;

fn bench_reduce(c: &mut Criterion) {
    let g = gen::gnm(200, 400, 0xBE9C).expect("generator parameters are valid");
    c.bench_function("reduce/gnm-200-400", |b| b.iter(|| reduce(black_box(&g))));
}

fn bench_dichotomy(c: &mut Criterion) {
    let sparse = gen::gnm(200, 300, 0xBE9C).expect("generator parameters are valid");
    c.bench_function("cycles_or_fvs/gnm-200-300-k3", |b| {
        b.iter(|| cycles_or_fvs(black_box(&sparse), black_box(3)))
    });
}

fn bench_girth(c: &mut Criterion) {
    let g = gen::grid(8, 8).expect("generator parameters are valid");
    let f = greedy_fvs(&g);
    c.bench_function("shortest_cycle/grid-8x8", |b| {
        b.iter(|| shortest_cycle_with_fvs(black_box(&g), black_box(&f)).unwrap())
    });
}

fn bench_exact(c: &mut Criterion) {
    let g = gen::gnm(14, 20, 0xBE9C).expect("generator parameters are valid");
    c.bench_function("ie_decide/gnm-14-20-k2", |b| {
        b.iter(|| ie_decide(black_box(&g), black_box(2)).unwrap())
    });
}

fn bench_solve(c: &mut Criterion) {
    let theta = gen::theta(3, 8).expect("generator parameters are valid");
    let opts = SolveOptions { strategy: Strategy::Auto, budget: None, c_override: None };
    c.bench_function("solve/theta-3x8-k2-auto", |b| {
        b.iter(|| solve(black_box(&theta), black_box(2), &opts).unwrap())
    });
}

criterion_group!(benches, bench_reduce, bench_dichotomy, bench_girth, bench_exact, bench_solve);
criterion_main!(benches);
