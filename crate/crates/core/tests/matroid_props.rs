mod common;

use common::naive_rank;
use mal_core::linalg::{rat, RatMatrix};
use mal_core::matroid::{contract_matrix, ColumnSubset, RankOracle, RankTable, RepMatrix};
use proptest::prelude::*;

fn rep_upto_8() -> impl Strategy<Value = RepMatrix> {
    (1usize..=3, 0usize..=5)
        .prop_flat_map(|(d, extra)| {
            let m = d + extra;
            proptest::collection::vec(-2i64..=2, d * m).prop_map(move |v| (d, m, v))
        })
        .prop_filter_map("full row rank", |(d, m, v)| {
            RepMatrix::new(RatMatrix::new(d, m, v.into_iter().map(rat).collect()).ok()?).ok()
        })
}

fn subsets(m: usize) -> impl Iterator<Item = ColumnSubset> {
    ColumnSubset::all(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_axioms(r in rep_upto_8()) {
        let m = r.m();
        let table = RankTable::new(&r).unwrap();
        for s in subsets(m) {
            let rk = r.rank(s);
            prop_assert_eq!(rk, naive_rank(r.matrix(), &s.to_vec()));
            prop_assert_eq!(table.rank(s), rk);
            prop_assert!(rk <= s.len());
            for j in 0..m {
                let up = r.rank(s.with(j));
                prop_assert!(up == rk || up == rk + 1);
            }
        }
        // submodularity on a sample of pairs
        let all: Vec<ColumnSubset> = subsets(m).collect();
        for (i, &a) in all.iter().enumerate().step_by(3) {
            for &b in all.iter().skip(i).step_by(5) {
                prop_assert!(
                    r.rank(a.union(b)) + r.rank(a.intersection(b)) <= r.rank(a) + r.rank(b)
                );
            }
        }
    }

    #[test]
    fn closure_and_flats(r in rep_upto_8()) {
        let m = r.m();
        for s in subsets(m) {
            let cl = r.closure(s);
            prop_assert!(s.is_subset_of(cl));
            prop_assert_eq!(r.rank(cl), r.rank(s));
            prop_assert_eq!(r.closure(cl), cl);
        }
        let flats = r.flats();
        for f in &flats {
            prop_assert_eq!(r.closure(*f), *f);
        }
        let expected: Vec<ColumnSubset> = subsets(m).filter(|&s| r.closure(s) == s).collect();
        prop_assert_eq!(flats, expected);
    }

    #[test]
    fn earliest_bases_and_activity(r in rep_upto_8()) {
        let m = r.m();
        for s in subsets(m) {
            let b = r.lex_earliest_basis(s);
            prop_assert!(r.is_independent(b));
            prop_assert_eq!(b.len(), r.rank(s));
            prop_assert!(b.is_subset_of(r.closure(s)));
            let w = r.lex_earliest_basis_within(s);
            prop_assert!(w.is_subset_of(s));
            prop_assert_eq!(w.len(), r.rank(s));
            if r.is_independent(s) {
                let ea = r.externally_active_set(s);
                prop_assert!(ea.intersection(s).is_empty());
                for j in ea.iter() {
                    // with the greedy earliest basis, e is active iff it is
                    // the largest element of its fundamental circuit in s + e
                    let circuit_max = s.iter().filter(|&i| {
                        let t = s.without(i).with(j);
                        r.is_independent(t)
                    }).all(|i| j > i);
                    prop_assert!(circuit_max, "{:?} active for {:?}", j, s);
                }
            }
        }
    }

    #[test]
    fn minors(r in rep_upto_8()) {
        let m = r.m();
        for j in 0..m {
            if r.is_coloop(j) {
                continue;
            }
            let del = r.delete(j).unwrap();
            let con = contract_matrix(r.matrix(), j).unwrap();
            prop_assert_eq!(del.d(), r.d());
            prop_assert_eq!(con.rows(), r.d() - 1);
            for s in subsets(m - 1) {
                let orig: Vec<usize> = s.iter().map(|i| if i < j { i } else { i + 1 }).collect();
                let so = ColumnSubset::from_indices(&orig);
                prop_assert_eq!(del.rank(s), r.rank(so));
                prop_assert_eq!(naive_rank(&con, &s.to_vec()), r.rank(so.with(j)) - 1);
            }
        }
    }

    #[test]
    fn uniformity_agrees_with_minors(r in rep_upto_8()) {
        prop_assert_eq!(r.is_uniform(), r.is_uniform_by_minors());
        prop_assert_eq!(r.is_uniform(), r.vanishing_minor().is_none());
    }
}

#[test]
fn uniformity_exhaustive_small() {
    // every 2 x 4 and 3 x 5 matrix in [I N] form with N entries in {-1, 0, 1, 2}
    let vals = [-1i64, 0, 1, 2];
    for (d, extra) in [(2usize, 2usize), (3, 2)] {
        let cells = d * extra;
        for code in 0..vals.len().pow(cells as u32) {
            let n: Vec<i64> = (0..cells).map(|i| vals[code / 4usize.pow(i as u32) % 4]).collect();
            let rows: Vec<Vec<i64>> = (0..d)
                .map(|i| {
                    let mut row: Vec<i64> = (0..d).map(|k| i64::from(k == i)).collect();
                    row.extend(&n[i * extra..(i + 1) * extra]);
                    row
                })
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let Ok(r) = RepMatrix::from_i64(&refs) else { continue };
            if r.m() != d + extra {
                continue;
            }
            assert_eq!(r.is_uniform(), r.is_uniform_by_minors(), "{rows:?}");
        }
    }
}
