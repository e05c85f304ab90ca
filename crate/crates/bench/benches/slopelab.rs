use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use slopelab::cone::brute_force_minimum;
use slopelab::rational::ratio;
use slopelab::{
    build_program, compare_paths, lambda_bound, minimize, verify_sharpness, Fiber, GenusProfile, SingularityForest,
    SingularityNode, Strictness,
};

fn bound_table(c: &mut Criterion) {
    c.bench_function("lambda_bound g<=200", |b| {
        b.iter(|| {
            for g in 2..=200 {
                for p in GenusProfile::all_for_genus(g) {
                    black_box(lambda_bound(&p));
                }
            }
        })
    });
}

fn simplex(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    for (g, q) in [(5, 2), (10, 3), (20, 5), (40, 10)] {
        let prog = build_program(&GenusProfile::new(g, q).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("g{g}_q{q}")), &prog, |b, prog| {
            b.iter(|| minimize(black_box(prog)).unwrap())
        });
    }
    group.finish();
}

fn sharpness(c: &mut Criterion) {
    c.bench_function("verify_sharpness g=20 q=7", |b| {
        let p = GenusProfile::new(20, 7).unwrap();
        b.iter(|| verify_sharpness(black_box(&p)).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    for g in [4, 6, 8] {
        let prog = build_program(&GenusProfile::new(g, 1).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(g), &prog, |b, prog| {
            b.iter(|| brute_force_minimum(black_box(prog)).unwrap())
        });
    }
    group.finish();
}

fn resolution(c: &mut Criterion) {
    // A wide forest: every odd root heads a pair, every even root a short chain.
    let g = 11;
    let roots: Vec<SingularityNode> = (3..=g + 2)
        .map(|m| {
            if m % 2 == 1 {
                SingularityNode::with_children(m, vec![SingularityNode::leaf(m + 1)])
            } else {
                SingularityNode::with_children(m, vec![SingularityNode::leaf(m), SingularityNode::leaf(2)])
            }
        })
        .collect();
    let fibers = (0..8).map(|_| Fiber { roots: roots.clone() }).collect();
    let forest = SingularityForest::new(g, ratio(1234, 7), fibers);
    c.bench_function("compare_paths g=11", |b| {
        b.iter(|| compare_paths(black_box(&forest), Strictness::Lenient).unwrap())
    });
}

criterion_group!(benches, bound_table, simplex, sharpness, enumeration, resolution);
criterion_main!(benches);
