//! Shared helpers for integration tests: an independent rank oracle, a
//! deterministic random matrix source, and the exhaustive small-group
//! corpus walker.

#![allow(dead_code)]

use mtcm_core::atlas::{admissible_data, family_builds, FamilySpec, SubfieldPolicy};
use mtcm_core::{enumerate_cm_types, CmFieldDatum, CmType};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Rank over Q by Bareiss fraction-free Gaussian elimination in i128.
/// Independent of the HNF/SNF code paths.
pub fn rank_bareiss(rows: &[Vec<i64>]) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..n {
        let Some(pivot) = (rank..m).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..m {
            for c in col + 1..n {
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Deterministic RNG for reproducible random-case suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random matrix with entries in `[-5, 5]`.
pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-5i64..=5)).collect())
        .collect()
}

/// Every admissible datum over the cyclic, abelian-product and dihedral
/// families up to the order bound, with all subgroups admitted, paired with
/// its description string.
pub fn corpus_data(max_order: usize) -> Vec<(CmFieldDatum, String)> {
    let mut out = Vec::new();
    for family in [
        FamilySpec::Cyclic,
        FamilySpec::AbelianProducts,
        FamilySpec::Dihedral,
    ] {
        for built in family_builds(&family, max_order, 64).expect("family builds") {
            out.extend(admissible_data(&built, SubfieldPolicy::AllSubgroups));
        }
    }
    out
}

/// Every CM type on every corpus datum (no dedupe), with a description.
pub fn corpus_types(max_order: usize) -> Vec<(String, CmType)> {
    let mut out = Vec::new();
    for (datum, desc) in corpus_data(max_order) {
        for t in enumerate_cm_types(&datum, false).expect("enumeration within cap") {
            let label = format!("{desc} phi={:?}", t.phi());
            out.push((label, t));
        }
    }
    out
}
