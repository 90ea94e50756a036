//! Cross-checks of the lattice algebra against an independent elimination
//! oracle, on deterministic random inputs.

mod common;

use common::{random_matrix, rank_bareiss, rng};
use mtcm_core::integer_lattice::{hnf_canonical, lattice_equal, pair, LatticeMap};
use rand::Rng;

#[test]
fn hnf_rank_matches_bareiss_oracle_on_1000_matrices() {
    let mut rng = rng(0x5eed_0001);
    for case in 0..1000 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let m = random_matrix(&mut rng, rows, cols);
        let l = hnf_canonical(cols, &m).unwrap();
        assert_eq!(l.rank(), rank_bareiss(&m), "case {case}: {m:?}");
    }
}

#[test]
fn saturation_preserves_rank_and_membership_on_random_lattices() {
    let mut rng = rng(0x5eed_0002);
    for _ in 0..500 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=8);
        let m = random_matrix(&mut rng, rows, cols);
        let l = hnf_canonical(cols, &m).unwrap();
        let s = l.saturate().unwrap();
        assert_eq!(s.rank(), l.rank());
        for row in &m {
            assert!(s.contains(row).unwrap());
        }
        // The saturation is the double annihilator.
        let double = l.annihilator().unwrap().annihilator().unwrap();
        assert!(lattice_equal(&double, &s).unwrap());
        // Annihilator rank is complementary once saturated.
        assert_eq!(s.annihilator().unwrap().rank(), cols - s.rank());
    }
}

#[test]
fn annihilator_actually_annihilates() {
    let mut rng = rng(0x5eed_0003);
    for _ in 0..300 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=7);
        let m = random_matrix(&mut rng, rows, cols);
        let l = hnf_canonical(cols, &m).unwrap();
        let ann = l.annihilator().unwrap();
        for chi in ann.basis() {
            for gamma in &m {
                assert_eq!(pair(chi, gamma).unwrap(), 0);
            }
        }
    }
}

#[test]
fn adjunction_against_transpose_on_random_maps() {
    let mut rng = rng(0x5eed_0004);
    for _ in 0..1000 {
        let s = rng.gen_range(1..=6);
        let t = rng.gen_range(1..=6);
        let a = LatticeMap::new(s, t, random_matrix(&mut rng, t, s)).unwrap();
        let gamma: Vec<i64> = (0..s).map(|_| rng.gen_range(-5i64..=5)).collect();
        let chi: Vec<i64> = (0..t).map(|_| rng.gen_range(-5i64..=5)).collect();
        let lhs = pair(&chi, &a.apply(&gamma).unwrap()).unwrap();
        let rhs = pair(&a.transpose().apply(&chi).unwrap(), &gamma).unwrap();
        assert_eq!(lhs, rhs);
    }
}
