use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use parabolic_bench::{braid, d_type, exceptional};
use parabolic_core::oracle::longest_element;
use parabolic_core::{
    classify_group, conjugator, decide_stability, orbit, recognize_component, VertexSet,
};

fn orbits(c: &mut Criterion) {
    let e7 = exceptional(7);
    let x = e7
        .subset_from_names(&["s1", "s2", "s3", "s4", "s6"])
        .unwrap();
    let target = e7
        .subset_from_names(&["s2", "s4", "s5", "s6", "s7"])
        .unwrap();
    c.bench_function("orbit/e7_a4_a1", |b| {
        b.iter(|| orbit(black_box(&e7), black_box(x)))
    });
    c.bench_function("conjugator/e7_worked_example", |b| {
        b.iter(|| conjugator(black_box(&e7), black_box(x), black_box(target)))
    });
    let e8 = exceptional(8);
    let single = e8.subset_from_names(&["s1"]).unwrap();
    c.bench_function("orbit/e8_singleton", |b| {
        b.iter(|| orbit(black_box(&e8), black_box(single)))
    });
}

fn stability(c: &mut Criterion) {
    let a6 = braid(6);
    c.bench_function("stability/a6_all_subsets", |b| {
        b.iter(|| {
            for bits in 1u64..(1 << 6) {
                black_box(
                    decide_stability(&a6, VertexSet::from_bits(bits), Default::default()).unwrap(),
                );
            }
        })
    });
    let d7 = d_type(7);
    let x = d7.all().without(6);
    c.bench_function("stability/d7_d6_exception", |b| {
        b.iter(|| decide_stability(black_box(&d7), black_box(x), Default::default()).unwrap())
    });
}

fn recognition(c: &mut Criterion) {
    let e8 = exceptional(8);
    c.bench_function("recognize/e8", |b| {
        b.iter(|| recognize_component(black_box(&e8), e8.all()))
    });
    c.bench_function("classify/e8", |b| b.iter(|| classify_group(black_box(&e8))));
    let comp = recognize_component(&e8, e8.all()).unwrap().unwrap();
    c.bench_function("oracle/longest_element_e8", |b| {
        b.iter(|| longest_element(black_box(&comp)))
    });
}

criterion_group!(benches, orbits, stability, recognition);
criterion_main!(benches);
