//! Combinatorial routes to the Poincaré polynomial of `A(M)`.
//!
//! Three independent computations, which must agree:
//! - [`poincare_delcon`]: deletion/contraction on the matrix itself,
//!   `P(M) = t P(M \ j) + P(M / j)`.
//! - [`poincare_from_tutte`]: the Tutte polynomial from the rank expansion,
//!   specialized as `t^(m-d) T(1 + t, 1/t)`.
//! - [`hilbert_via_activity`]: counting independent sets by
//!   `m - |S| - ea(S)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{MalError, Result};
use crate::matroid::{ColumnSubset, RankOracle, RankTable, RepMatrix};
use crate::poly::{BiPoly, UniPoly};

/// Poincaré polynomial by recursion on the last column.
///
/// Base cases: `d = 0` gives `1`, `d = 1` gives `1 + t + ... + t^m`. A coloop
/// `j` contributes `(1 + t) P(M / j)`, since deletion and contraction of a
/// coloop give the same matroid.
pub fn poincare_delcon(rep: &RepMatrix) -> UniPoly {
    let d = rep.d();
    let m = rep.m();
    if d == 0 {
        return UniPoly::one();
    }
    if d == 1 {
        return UniPoly::geometric(m);
    }
    let j = m - 1;
    let contracted = rep.contract(j).expect("column is nonzero and in range");
    let p_con = poincare_delcon(&contracted);
    match rep.delete(j) {
        Ok(deleted) => poincare_delcon(&deleted).shift(1).add(&p_con),
        Err(MalError::Rank { .. }) => UniPoly::new(vec![1, 1]).mul(&p_con),
        Err(e) => unreachable!("delete of an in-range column: {e}"),
    }
}

/// `T(x, y) = sum over S of (x - 1)^(d - r(S)) (y - 1)^(|S| - r(S))`.
pub fn tutte_rank_expansion(rep: &RepMatrix) -> Result<BiPoly> {
    let table = RankTable::new(rep)?;
    Ok(tutte_from_oracle(&table))
}

/// Rank expansion for any rank oracle.
pub fn tutte_from_oracle<R: RankOracle + Sync>(oracle: &R) -> BiPoly {
    let m = oracle.ground_size();
    let d = oracle.full_rank();
    // (corank, nullity) -> number of subsets
    let counts: BTreeMap<(usize, usize), i64> = (0..1usize << m)
        .into_par_iter()
        .with_min_len(1024)
        .fold(BTreeMap::new, |mut acc, s| {
            let s = ColumnSubset(s as u64);
            let r = oracle.rank(s);
            *acc.entry((d - r, s.len() - r)).or_insert(0i64) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut t = BiPoly::zero();
    for (&(a, b), &n) in &counts {
        for i in 0..=a {
            let xi = binom(a, i) * if (a - i) % 2 == 0 { 1 } else { -1 };
            for k in 0..=b {
                let yk = binom(b, k) * if (b - k) % 2 == 0 { 1 } else { -1 };
                t.add_term(i, k, n * xi * yk);
            }
        }
    }
    t
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `t^(m-d) T(1 + t, 1/t)`, checked to be a genuine polynomial with
/// nonnegative coefficients.
pub fn specialize_tutte(tutte: &BiPoly, m: usize, d: usize) -> Result<UniPoly> {
    // exponent of t (may go negative before cancellation) -> coefficient
    let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
    let shift = m as i64 - d as i64;
    for ((a, b), c) in tutte.terms() {
        for i in 0..=a {
            let e = i as i64 - b as i64 + shift;
            *acc.entry(e).or_insert(0) += c * binom(a, i);
        }
    }
    acc.retain(|_, c| *c != 0);
    if let Some((&e, &c)) = acc.iter().find(|(&e, _)| e < 0) {
        return Err(MalError::OracleMismatch(format!(
            "Tutte specialization left t^{e} with coefficient {c}"
        )));
    }
    if let Some((&e, &c)) = acc.iter().find(|(_, &c)| c < 0) {
        return Err(MalError::OracleMismatch(format!(
            "Tutte specialization has negative coefficient {c} at t^{e}"
        )));
    }
    let top = acc.keys().next_back().map_or(0, |&e| e as usize);
    let mut coeffs = vec![0u64; top + 1];
    for (e, c) in acc {
        coeffs[e as usize] = c as u64;
    }
    Ok(UniPoly::new(coeffs))
}

pub fn poincare_from_tutte(rep: &RepMatrix) -> Result<UniPoly> {
    let t = tutte_rank_expansion(rep)?;
    specialize_tutte(&t, rep.m(), rep.d())
}

/// Hilbert function as the distribution of `m - |S| - ea(S)` over the
/// independent sets `S`.
pub fn hilbert_via_activity(rep: &RepMatrix) -> Result<UniPoly> {
    let table = RankTable::new(rep)?;
    Ok(activity_distribution(&table))
}

pub fn activity_distribution<R: RankOracle + Sync>(oracle: &R) -> UniPoly {
    let m = oracle.ground_size();
    let degrees: Vec<usize> = (0..1usize << m)
        .into_par_iter()
        .with_min_len(256)
        .map(|s| ColumnSubset(s as u64))
        .filter(|&s| oracle.is_independent(s))
        .map(|s| m - s.len() - oracle.external_activity(s))
        .collect();
    let mut coeffs = vec![0u64; m + 1];
    for deg in degrees {
        coeffs[deg] += 1;
    }
    UniPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u32_() -> RepMatrix {
        RepMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]).unwrap()
    }

    fn parallel() -> RepMatrix {
        RepMatrix::from_i64(&[&[1, 0, 1, 1], &[0, 1, 1, 1]]).unwrap()
    }

    fn coloop() -> RepMatrix {
        RepMatrix::from_i64(&[&[1]]).unwrap()
    }

    #[test]
    fn delcon_examples() {
        assert_eq!(poincare_delcon(&u32_()).coeffs(), &[1, 2, 3, 1]);
        let line = RepMatrix::from_i64(&[&[1, 1, 1]]).unwrap();
        assert_eq!(poincare_delcon(&line).coeffs(), &[1, 1, 1, 1]);
        assert_eq!(poincare_delcon(&parallel()).coeffs(), &[1, 2, 3, 3, 1]);
    }

    #[test]
    fn delcon_all_coloops() {
        let id = RepMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(poincare_delcon(&id).coeffs(), &[1, 3, 3, 1]);
    }

    #[test]
    fn rank_expansion_examples() {
        assert_eq!(
            tutte_rank_expansion(&u32_()).unwrap(),
            BiPoly::from_terms(&[(2, 0, 1), (1, 0, 1), (0, 1, 1)])
        );
        assert_eq!(tutte_rank_expansion(&coloop()).unwrap(), BiPoly::from_terms(&[(1, 0, 1)]));
        assert_eq!(
            tutte_rank_expansion(&parallel()).unwrap(),
            BiPoly::from_terms(&[(2, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1), (0, 2, 1)])
        );
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(poincare_from_tutte(&u32_()).unwrap().coeffs(), &[1, 2, 3, 1]);
        assert_eq!(poincare_from_tutte(&coloop()).unwrap().coeffs(), &[1, 1]);
        assert_eq!(poincare_from_tutte(&parallel()).unwrap().coeffs(), &[1, 2, 3, 3, 1]);
    }

    #[test]
    fn specialization_rejects_laurent_leftovers() {
        // y alone with m = d leaves t^-1
        let bogus = BiPoly::from_terms(&[(0, 1, 1)]);
        assert!(matches!(specialize_tutte(&bogus, 1, 1), Err(MalError::OracleMismatch(_))));
    }

    #[test]
    fn activity_examples() {
        assert_eq!(hilbert_via_activity(&u32_()).unwrap().coeffs(), &[1, 2, 3, 1]);
        let id = RepMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(hilbert_via_activity(&id).unwrap().coeffs(), &[1, 2, 1]);
        let p = hilbert_via_activity(&parallel()).unwrap();
        assert_eq!(p.eval_one(), 10);
        assert_eq!(p.coeffs(), &[1, 2, 3, 3, 1]);
    }
}
