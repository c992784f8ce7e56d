//! Sequential against data-parallel execution on the hot loops.
//!
//! Without the `parallel` feature only the sequential variants run.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qrgroups::groups::{build_abelian, build_sl, ClassData, DEFAULT_ELEMENT_BUDGET};
use qrgroups::mixing::{mixing_suite, Tolerances};
use qrgroups::productfree::exact_max_product_free;
use qrgroups::reptheory::character_table_with;
use qrgroups::Exec;

fn strategies() -> Vec<(&'static str, Exec)> {
    vec![
        ("sequential", Exec::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Exec::Parallel),
    ]
}

fn class_data(c: &mut Criterion) {
    let g = build_sl(2, 13, 1, DEFAULT_ELEMENT_BUDGET).unwrap();
    let mut group = c.benchmark_group("classes_sl2_f13");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(ClassData::compute_with(&g, exec).num_classes()))
        });
    }
    group.finish();
}

fn character_table(c: &mut Criterion) {
    let g = build_sl(2, 3, 2, DEFAULT_ELEMENT_BUDGET).unwrap();
    let classes = ClassData::compute(&g);
    let mut group = c.benchmark_group("table_sl2_z9");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(character_table_with(&g, &classes, 42, exec).unwrap().r()))
        });
    }
    group.finish();
}

fn mixing(c: &mut Criterion) {
    let g = build_sl(2, 5, 1, DEFAULT_ELEMENT_BUDGET).unwrap();
    let mut group = c.benchmark_group("mixing_sl2_f5_100");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(mixing_suite(&g, 2, 100, 42, exec, Tolerances::default()).unwrap().failures))
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let g = build_abelian(&[3, 9], DEFAULT_ELEMENT_BUDGET).unwrap();
    let mut group = c.benchmark_group("search_z3_z9");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(exact_max_product_free(&g, 10_000_000, exec).unwrap().size))
        });
    }
    group.finish();
}

criterion_group!(benches, class_data, character_table, mixing, search);
criterion_main!(benches);
