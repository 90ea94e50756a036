use criterion::{black_box, criterion_group, criterion_main, Criterion};

use mtcm_core::atlas::{tabulate_family, FamilySpec, SubfieldPolicy, TabulateOptions};
use mtcm_core::fixtures;
use mtcm_core::integer_lattice::hnf_canonical;
use mtcm_core::mumford_tate::{check_main_theorem, mt_lattice};

/// Deterministic pseudo-random matrix, entries in [-5, 5].
fn lcg_matrix(seed: u64, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    let mut state = seed;
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 33) % 11) as i64 - 5
                })
                .collect()
        })
        .collect()
}

fn bench_lattice_kernels(c: &mut Criterion) {
    let mats: Vec<Vec<Vec<i64>>> = (0..32).map(|s| lcg_matrix(s, 6, 8)).collect();
    c.bench_function("hnf_canonical 6x8", |b| {
        b.iter(|| {
            for m in &mats {
                black_box(hnf_canonical(8, black_box(m)).unwrap());
            }
        })
    });
    let lattices: Vec<_> = mats.iter().map(|m| hnf_canonical(8, m).unwrap()).collect();
    c.bench_function("saturate 6x8", |b| {
        b.iter(|| {
            for l in &lattices {
                black_box(black_box(l).saturate().unwrap());
            }
        })
    });
    c.bench_function("annihilator 6x8", |b| {
        b.iter(|| {
            for l in &lattices {
                black_box(black_box(l).annihilator().unwrap());
            }
        })
    });
}

fn bench_theorem(c: &mut Criterion) {
    let d4 = fixtures::d4();
    c.bench_function("mt_lattice d4", |b| {
        b.iter(|| black_box(mt_lattice(black_box(&d4)).unwrap()))
    });
    c.bench_function("check_main_theorem d4", |b| {
        b.iter(|| black_box(check_main_theorem(black_box(&d4)).unwrap()))
    });
}

fn bench_atlas(c: &mut Criterion) {
    let opts = TabulateOptions {
        max_order: 12,
        policy: SubfieldPolicy::AllSubgroups,
        dedupe: false,
        order_cap: 64,
    };
    c.bench_function("tabulate cyclic <= 12, all subgroups", |b| {
        b.iter(|| black_box(tabulate_family(&FamilySpec::Cyclic, black_box(&opts)).unwrap()))
    });
}

criterion_group!(benches, bench_lattice_kernels, bench_theorem, bench_atlas);
criterion_main!(benches);
