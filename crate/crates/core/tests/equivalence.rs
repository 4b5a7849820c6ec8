mod common;

use common::{random_family, random_transform, rep};
use mal_core::equiv::{decide_equivalence, linearly_equivalent_from_basis, Verdict};
use mal_core::matroid::{combinations, ColumnSubset, RankOracle};
use mal_core::tutte::poincare_delcon;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn transformed_pairs_are_found() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (i, r) in random_family(60, 3).iter().enumerate() {
        let n = random_transform(r, &mut rng);
        let out = decide_equivalence(r, &n);
        assert_eq!(out.verdict, Verdict::Equivalent, "instance {i}: {:?}", r.matrix());
        assert!(out.witness.unwrap().verify(r, &n));
    }
}

#[test]
fn every_anchor_basis_finds_a_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for r in random_family(25, 4).iter().filter(|r| r.m() <= 7) {
        let n = random_transform(r, &mut rng);
        for basis in combinations(r.m(), r.d()) {
            if !r.is_independent(ColumnSubset::from_indices(&basis)) {
                continue;
            }
            let w = linearly_equivalent_from_basis(r, &n, &basis)
                .unwrap_or_else(|| panic!("basis {basis:?} missed {:?}", r.matrix()));
            assert!(w.verify(r, &n));
        }
    }
}

#[test]
fn cross_ratio_pair_has_no_witness_from_any_basis() {
    let m = rep(&[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
    let n = rep(&[&[1, 0, 1, 1], &[0, 1, 1, 3]]);
    assert_eq!(poincare_delcon(&m), poincare_delcon(&n));
    for basis in combinations(4, 2) {
        assert!(linearly_equivalent_from_basis(&m, &n, &basis).is_none());
    }
    assert_eq!(decide_equivalence(&m, &n).verdict, Verdict::Search);
}

#[test]
fn witnesses_compose_and_invert() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for r in random_family(20, 5) {
        let a = random_transform(&r, &mut rng);
        let b = random_transform(&a, &mut rng);
        let w1 = decide_equivalence(&r, &a).witness.unwrap();
        let w2 = decide_equivalence(&a, &b).witness.unwrap();
        assert!(w1.then(&w2).verify(&r, &b));
        assert!(w1.inverse().verify(&a, &r));
    }
}

#[test]
fn different_parallel_profiles_are_rejected_early() {
    let m = rep(&[&[1, 0, 1, 1], &[0, 1, 1, 1]]);
    let n = rep(&[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
    assert_eq!(decide_equivalence(&m, &n).verdict, Verdict::ParallelProfile);
}
