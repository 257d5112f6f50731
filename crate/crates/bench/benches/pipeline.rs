//! Benchmarks along the pipeline: Bruhat comparisons, representative
//! enumeration, matrix posets, canonical forms, and the classification.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use doubleflag_core::{
    bruhat_leq, classify, matrix_poset, reduced_case_list, symmetric_group, Backend,
    BlockComposition, CosetSystem, Permutation,
};

fn blocks(s: &str) -> BlockComposition {
    s.parse().expect("valid blocks")
}

fn bruhat_comparisons(c: &mut Criterion) {
    let elements: Vec<Permutation> = symmetric_group(6).expect("within budget").collect();
    c.bench_function("bruhat_leq/s6_sampled_pairs", |b| {
        b.iter(|| {
            let mut below = 0usize;
            for u in elements.iter().step_by(7) {
                for v in elements.iter().step_by(11) {
                    if bruhat_leq(u, v).expect("same degree") {
                        below += 1;
                    }
                }
            }
            black_box(below)
        })
    });
}

fn representative_enumeration(c: &mut Criterion) {
    let system = CosetSystem::from_blocks(blocks("2,6"), blocks("2,2,2,2")).expect("valid pair");
    c.bench_function("minimal_representatives/(2,6)x(2,2,2,2)", |b| {
        b.iter(|| black_box(system.minimal_representatives().expect("enumerates").len()))
    });
}

fn matrix_backend(c: &mut Criterion) {
    let left = blocks("3,6");
    let right = blocks("3,3,3");
    c.bench_function("matrix_poset/(3,6)x(3,3,3)", |b| {
        b.iter(|| black_box(matrix_poset(&left, &right).expect("valid pair").size()))
    });
}

fn canonical_forms(c: &mut Criterion) {
    // The largest poset the classification itself canonicalizes, plus the
    // 24-element Bruhat order of S_4 as a denser stress case.
    let largest_class = matrix_poset(&blocks("3,6"), &blocks("3,3,3")).expect("valid pair");
    c.bench_function("canonical_form/(3,6)x(3,3,3)", |b| {
        b.iter(|| black_box(largest_class.canonical_form().hex()))
    });
    let s4 = matrix_poset(&blocks("1,1,1,1"), &blocks("1,1,1,1")).expect("bruhat order s4");
    c.bench_function("canonical_form/s4_bruhat_order", |b| {
        b.iter(|| black_box(s4.canonical_form().hex()))
    });
}

fn full_classification(c: &mut Criterion) {
    let cases = reduced_case_list();
    c.bench_function("classify/reduced_cases_matrix", |b| {
        b.iter(|| black_box(classify(&cases, Backend::Matrix).expect("classifies").class_count()))
    });
}

criterion_group!(
    benches,
    bruhat_comparisons,
    representative_enumeration,
    matrix_backend,
    canonical_forms,
    full_classification
);
criterion_main!(benches);
