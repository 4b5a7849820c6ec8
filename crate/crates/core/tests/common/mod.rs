//! Test-only oracles and instance families. Nothing here calls the library's
//! Hilbert or Tutte code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use mal_core::analysis::{random_rep, UniformityMode};
use mal_core::linalg::{rat, RatMatrix, Rational};
use mal_core::RepMatrix;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `dim A_j` from dense products in `B`: `A_j` is spanned by `f * a` with `f`
/// a row and `a` in a spanning set of `A_{j-1}`.
pub fn dense_hilbert(mat: &RatMatrix) -> Vec<u64> {
    let (d, m) = (mat.rows(), mat.cols());
    let size = 1usize << m;
    let rows: Vec<Vec<Rational>> = (0..d).map(|i| mat.row(i).to_vec()).collect();
    let mut one = vec![Rational::zero(); size];
    one[0] = rat(1);
    let mut span = vec![one];
    let mut dims = vec![1u64];
    for _ in 1..=m {
        let mut next = Vec::new();
        for f in &rows {
            for a in &span {
                let mut out = vec![Rational::zero(); size];
                for (mask, c) in a.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (i, fi) in f.iter().enumerate() {
                        if mask >> i & 1 == 0 && !fi.is_zero() {
                            out[mask | 1 << i] += c * fi;
                        }
                    }
                }
                next.push(out);
            }
        }
        span = independent_subset(next);
        dims.push(span.len() as u64);
    }
    while dims.len() > 1 && *dims.last().unwrap() == 0 {
        dims.pop();
    }
    dims
}

/// Greedy maximal independent subfamily via incremental rank.
fn independent_subset(vecs: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    // reduced copies with their pivot positions
    let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new();
    for v in vecs {
        let mut w = v.clone();
        for (p, r) in &reduced {
            if !w[*p].is_zero() {
                let c = w[*p].clone() / &r[*p];
                for (x, y) in w.iter_mut().zip(r) {
                    *x -= &c * y;
                }
            }
        }
        if let Some(p) = w.iter().position(|x| !x.is_zero()) {
            reduced.push((p, w));
            kept.push(v);
        }
    }
    kept
}

/// Rank of a column subset by plain elimination on a fresh matrix.
pub fn naive_rank(mat: &RatMatrix, cols: &[usize]) -> usize {
    let mut rows: Vec<Vec<Rational>> = cols.iter().map(|&j| mat.column(j)).collect();
    let mut rank = 0;
    let width = mat.rows();
    for c in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / &pivot[c];
                for k in 0..width {
                    let t = &f * &pivot[k];
                    rows[i][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `t^(m-d) T(1 + t, 1/t)` expanded term by term from the subset sum
/// `T(x, y) = sum_S (x-1)^(d - r(S)) (y-1)^(|S| - r(S))`, with
/// `(1/t - 1)^k = t^-k (1 - t)^k`.
pub fn naive_poincare(mat: &RatMatrix) -> Vec<u64> {
    let (d, m) = (mat.rows(), mat.cols());
    let mut coeffs: BTreeMap<i64, i128> = BTreeMap::new();
    for mask in 0u32..1 << m {
        let cols: Vec<usize> = (0..m).filter(|&j| mask >> j & 1 == 1).collect();
        let r = naive_rank(mat, &cols);
        let (a, k) = ((d - r) as i64, (cols.len() - r) as i64);
        // t^(m-d) * t^a * t^-k * (1 - t)^k
        let base = m as i64 - d as i64 + a - k;
        let mut binom = 1i128;
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *coeffs.entry(base + i).or_insert(0) += sign * binom;
            binom = binom * (k - i) as i128 / (i + 1) as i128;
        }
    }
    let top = coeffs.iter().filter(|(_, &c)| c != 0).map(|(&e, _)| e).max().unwrap_or(0);
    assert!(coeffs.iter().all(|(&e, &c)| c == 0 || e >= 0), "negative exponent survived");
    (0..=top)
        .map(|e| {
            let c = coeffs.get(&e).copied().unwrap_or(0);
            assert!(c >= 0, "negative coefficient {c} at t^{e}");
            c as u64
        })
        .collect()
}

/// Nonzero vectors of `{-1, 0, 1}^d` with first nonzero entry `1`.
pub fn projective_classes(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(d as u32) {
        let v: Vec<i64> = (0..d).map(|i| (code / 3usize.pow(i as u32) % 3) as i64 - 1).collect();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] + 1 < n) else {
            return out;
        };
        cur[i] += 1;
        for t in i + 1..k {
            cur[t] = cur[i];
        }
    }
}

/// All rank-`d` matrices with entries in `{-1, 0, 1}`, `d <= 3`, `m <= 5`,
/// no zero columns, up to column order and column sign.
pub fn exhaustive_family() -> Vec<RepMatrix> {
    let mut out = Vec::new();
    for d in 1..=3 {
        let classes = projective_classes(d);
        for m in d..=5 {
            for pick in multisets(classes.len(), m) {
                let data = (0..d)
                    .flat_map(|i| pick.iter().map(move |&c| (i, c)))
                    .map(|(i, c)| rat(classes[c][i]))
                    .collect();
                let mat = RatMatrix::new(d, m, data).unwrap();
                if mat.rank() == d {
                    out.push(RepMatrix::new(mat).unwrap());
                }
            }
        }
    }
    out
}

/// Seeded instances with `d <= 4`, `d <= m <= 9`, entries in `[-5, 5]`.
pub fn random_family(count: usize, seed: u64) -> Vec<RepMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=4);
            let m = rng.gen_range(d..=9);
            random_rep(d, m, rng.gen(), 5, UniformityMode::Any).unwrap()
        })
        .collect()
}

pub fn suite_one() -> Vec<RepMatrix> {
    let mut v = exhaustive_family();
    v.extend(random_family(300, 0x5eed));
    v
}

pub fn rep(rows: &[&[i64]]) -> RepMatrix {
    RepMatrix::from_i64(rows).unwrap()
}

/// `Q M P` with `Q` a random invertible integer matrix and `P` a random
/// monomial matrix with nonzero integer scales.
pub fn random_transform(r: &RepMatrix, rng: &mut impl Rng) -> RepMatrix {
    let (d, m) = (r.d(), r.m());
    let q = loop {
        let data = (0..d * d).map(|_| rat(rng.gen_range(-3..=3))).collect();
        let q = RatMatrix::new(d, d, data).unwrap();
        if q.rank() == d {
            break q;
        }
    };
    let mut perm: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut p = RatMatrix::zeros(m, m);
    for (j, &k) in perm.iter().enumerate() {
        let mut s = rng.gen_range(1..=5);
        if rng.gen_bool(0.5) {
            s = -s;
        }
        p.set(j, k, rat(s));
    }
    RepMatrix::new(q.mul(r.matrix()).unwrap().mul(&p).unwrap()).unwrap()
}
