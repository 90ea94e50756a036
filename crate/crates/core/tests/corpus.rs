//! Structural invariants checked across the exhaustive small-group corpus.
//! The acceptance suite reruns the heaviest of these at the full order bound;
//! here a smaller bound keeps the everyday test cycle fast.

mod common;

use mtcm_core::atlas::enumerate_cm_types;
use mtcm_core::mumford_tate::mt_lattice;

const CORPUS_BOUND: usize = 12;

#[test]
fn values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<mtcm_core::FiniteGroup>();
    assert_send_sync::<mtcm_core::CmFieldDatum>();
    assert_send_sync::<mtcm_core::CmType>();
    assert_send_sync::<mtcm_core::IntegerLattice>();
    assert_send_sync::<mtcm_core::MtReport>();
    assert_send_sync::<mtcm_core::AtlasRecord>();
}

#[test]
fn conjugate_translates_sum_to_the_weight_vector() {
    for (label, t) in common::corpus_types(CORPUS_BOUND) {
        let group = t.datum().group().clone();
        let c = t.datum().conjugation();
        let mu = t.hodge_cocharacter();
        for sigma in 0..group.order() {
            let a = t.galois_translate(sigma, &mu);
            let b = t.galois_translate(group.mul(c, sigma), &mu);
            assert!(
                a.iter().zip(&b).all(|(x, y)| x + y == 1),
                "identity fails for {label} at sigma={sigma}"
            );
        }
    }
}

#[test]
fn mt_rank_bounds_and_stability() {
    for (label, t) in common::corpus_types(CORPUS_BOUND) {
        let l = mt_lattice(&t).unwrap();
        let g = t.datum().g_dim();
        assert!(
            (2..=g + 1).contains(&l.rank()),
            "rank {} out of bounds for {label}",
            l.rank()
        );
        assert_eq!(l.saturate().unwrap(), l, "not saturated for {label}");
        let mu = t.hodge_cocharacter();
        let w = vec![1i64; t.datum().sigma().coset_count()];
        assert!(l.contains(&mu).unwrap(), "mu missing for {label}");
        assert!(l.contains(&w).unwrap(), "w missing for {label}");
        for sigma in 0..t.datum().group().order() {
            for row in l.basis() {
                assert!(
                    l.contains(&t.galois_translate(sigma, row)).unwrap(),
                    "not Galois stable for {label} at sigma={sigma}"
                );
            }
        }
    }
}

#[test]
fn coset_action_is_a_homomorphism_across_the_corpus() {
    for (datum, desc) in common::corpus_data(CORPUS_BOUND) {
        let group = datum.group();
        let sigma = datum.sigma();
        for g1 in 0..group.order() {
            for g2 in 0..group.order() {
                for j in 0..sigma.coset_count() {
                    assert_eq!(
                        sigma.act(group, g1, sigma.act(group, g2, j)),
                        sigma.act(group, group.mul(g1, g2), j),
                        "action not a homomorphism on {desc}"
                    );
                }
            }
        }
    }
}

#[test]
fn conjugation_is_fixed_point_free_across_the_corpus() {
    for (datum, desc) in common::corpus_data(CORPUS_BOUND) {
        for j in 0..datum.sigma().coset_count() {
            let cj = datum.conjugate_coset(j);
            assert_ne!(cj, j, "conjugation fixes coset {j} on {desc}");
            assert_eq!(datum.conjugate_coset(cj), j, "conjugation not involutive on {desc}");
        }
    }
}

#[test]
fn weight_multisets_are_sorted_with_positive_multiplicities() {
    for (_, t) in mtcm_core::fixtures::all_fixture_types() {
        for (m, n, r) in [(1u32, 0u32, 0i64), (1, 1, 0), (2, 1, -1), (0, 0, 2)] {
            let w = mtcm_core::motive_weights(&t, m, n, r, mtcm_core::DEFAULT_WEIGHT_CAP).unwrap();
            let expected = (2 * t.datum().g_dim() as u64).pow(m + n);
            assert_eq!(w.total_multiplicity(), expected);
            assert!(w.entries.iter().all(|(_, mult)| *mult > 0));
            assert!(w.entries.windows(2).all(|pair| pair[0].0 < pair[1].0));
        }
    }
}

#[test]
fn reflex_subgroup_is_the_brute_force_stabilizer() {
    for (label, t) in common::corpus_types(CORPUS_BOUND) {
        let group = t.datum().group();
        let brute: Vec<usize> = (0..group.order())
            .filter(|&g| t.translate_phi(g) == t.phi())
            .collect();
        let reflex = t.reflex_type().unwrap();
        assert_eq!(reflex.h_e.elements(), &brute[..], "stabilizer mismatch for {label}");
    }
}

#[test]
fn primitive_descent_preserves_mt_rank() {
    let mut descents = 0usize;
    for (label, t) in common::corpus_types(CORPUS_BOUND) {
        if let Some((h_prime, descended)) = t.primitive_descent().unwrap() {
            descents += 1;
            assert!(h_prime.order() > t.datum().h().order());
            assert_eq!(
                mt_lattice(&t).unwrap().rank(),
                mt_lattice(&descended).unwrap().rank(),
                "descent changed the rank for {label}"
            );
        }
    }
    assert!(descents > 0, "corpus contains no induced types");
}

#[test]
fn dedupe_covers_each_type_exactly_once_and_preserves_invariants() {
    for (datum, desc) in common::corpus_data(8) {
        let all = enumerate_cm_types(&datum, false).unwrap();
        let reps = enumerate_cm_types(&datum, true).unwrap();
        let group_order = datum.group().order();
        for t in &all {
            let covering = reps
                .iter()
                .filter(|rep| (0..group_order).any(|s| rep.translate_phi(s) == t.phi()))
                .count();
            assert_eq!(covering, 1, "type {:?} on {desc} covered {covering} times", t.phi());
        }
        for rep in &reps {
            let rep_report = mtcm_core::check_main_theorem(rep).unwrap();
            for sigma in 0..group_order {
                let translated = mtcm_core::validate_cm_type(&datum, &rep.translate_phi(sigma))
                    .expect("translate of a CM type is a CM type");
                let report = mtcm_core::check_main_theorem(&translated).unwrap();
                assert_eq!(report.mt_rank, rep_report.mt_rank);
                assert_eq!(report.degenerate, rep_report.degenerate);
                assert_eq!(report.reflex.reflex_degree, rep_report.reflex.reflex_degree);
            }
        }
    }
}
