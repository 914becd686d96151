use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use groupcode::code::{paut_enumerate_with, LinearCode};
use groupcode::constructions::{build_cyclic, build_dihedral, rep_sum_code};
use groupcode::ffield::Field;
use groupcode::perm::{centralizer_brute_force, regular_representation};
use groupcode::Exec;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn random_code(field: &Arc<Field>, n: usize, k: usize, seed: u64) -> LinearCode {
    let mut rng = StdRng::seed_from_u64(seed);
    let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..field.order())).collect()).collect();
    LinearCode::from_rows(Arc::clone(field), n, rows).unwrap()
}

fn weight_distribution(c: &mut Criterion) {
    let f2 = Field::parse("2").unwrap();
    let f3 = Field::parse("3").unwrap();
    let codes = [("F2 [32,16]", random_code(&f2, 32, 16, 1)), ("F3 [20,10]", random_code(&f3, 20, 10, 2))];
    let mut group = c.benchmark_group("weight_distribution");
    for (label, code) in &codes {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, label), code, |b, code| {
                b.iter(|| code.weight_distribution_with(u64::MAX, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn paut(c: &mut Criterion) {
    let f2 = Field::parse("2").unwrap();
    let codes =
        [("rep-sum 2,4", rep_sum_code(2, 4, Arc::clone(&f2)).unwrap()), ("random [8,3]", random_code(&f2, 8, 3, 3))];
    let mut group = c.benchmark_group("paut_enumerate_n8");
    group.sample_size(10);
    for (label, code) in &codes {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, label), code, |b, code| {
                b.iter(|| paut_enumerate_with(code, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn centralizer(c: &mut Criterion) {
    let groups = [
        ("S3 in S6", regular_representation(&build_dihedral(3).unwrap()).unwrap().group),
        ("C7 in S7", regular_representation(&build_cyclic(7).unwrap()).unwrap().group),
    ];
    let mut group = c.benchmark_group("centralizer_brute_force");
    group.sample_size(10);
    for (label, g) in &groups {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, label), g, |b, g| {
                b.iter(|| centralizer_brute_force(g, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, weight_distribution, paut, centralizer);
criterion_main!(benches);
