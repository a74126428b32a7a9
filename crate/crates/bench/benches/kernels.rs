use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use noether_bench::{published_case, square};
use noether_core::exact_linalg::{adjugate, det};
use noether_core::norm_search::{search_norm, SearchConfig};
use noether_core::{certify, run_reduction, CycInt};

fn linalg(c: &mut Criterion) {
    for n in [6usize, 12, 24] {
        let m = square(n, 1);
        c.bench_function(&format!("det/{n}"), |b| b.iter(|| det(black_box(&m)).unwrap()));
    }
    let m = square(8, 2);
    c.bench_function("adjugate/8", |b| b.iter(|| adjugate(black_box(&m)).unwrap()));
}

fn norms(c: &mut Criterion) {
    let x = CycInt::parse("1 + z^2 + z^5", 41).unwrap();
    c.bench_function("norm/41", |b| b.iter(|| black_box(&x).norm()));
    let cfg = SearchConfig { coeff_bound: 1, max_candidates: 200_000, dedupe: false };
    let target = 5801.into();
    c.bench_function("search/29/5801", |b| b.iter(|| search_norm(29, black_box(&target), &cfg).unwrap()));
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    for (q, p, x) in [(29u64, 5801u64, "1 + z + z^4"), (41, 432059, "1 + z^2 + z^5")] {
        let (spec, w, _) = published_case(q, p, x);
        g.bench_function(format!("reduce/{q}"), |b| b.iter(|| run_reduction(&spec, &w).unwrap()));
        let trace = run_reduction(&spec, &w).unwrap();
        g.bench_function(format!("certify/{q}"), |b| b.iter(|| certify(&trace, &w, &spec).unwrap()));
    }
    g.finish();
}

criterion_group!(kernels, linalg, norms, pipeline);
criterion_main!(kernels);
