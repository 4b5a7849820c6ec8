//! Numerical constraints on Hilbert functions: Macaulay pseudopowers, the
//! growth inequalities, log-concavity, the uniform-matroid formula, and the
//! inclusion-matrix determinant.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::monomials_of_degree;
use crate::error::{MalError, Result};
use crate::linalg::{RatMatrix, Rational};
use crate::poly::UniPoly;

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `a = C(a_j, j) + C(a_{j-1}, j-1) + ... + C(a_i, i)` with
/// `a_j > a_{j-1} > ... > a_i >= i > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialDecomposition {
    pub a: u64,
    pub j: u32,
    /// `(a_t, t)` for `t = j, j-1, ..., i`.
    pub parts: Vec<(u64, u32)>,
}

impl BinomialDecomposition {
    /// Greedy: at each level take the largest `a_t` with `C(a_t, t) <= rest`.
    pub fn new(a: u64, j: u32) -> Result<Self> {
        if a < 1 || j < 1 {
            return Err(MalError::InvalidArgument(format!(
                "binomial decomposition needs a >= 1 and j >= 1, got a = {a}, j = {j}"
            )));
        }
        let mut rest = a as u128;
        let mut parts = Vec::new();
        let mut t = j;
        while rest > 0 && t > 0 {
            let mut n = t as u64;
            while binomial(n + 1, t as u64) <= rest {
                n += 1;
            }
            rest -= binomial(n, t as u64);
            parts.push((n, t));
            t -= 1;
        }
        debug_assert_eq!(rest, 0);
        Ok(BinomialDecomposition { a, j, parts })
    }

    /// Sum of `C(a_t, t)` over the parts.
    pub fn value(&self) -> u128 {
        self.parts.iter().map(|&(n, t)| binomial(n, t as u64)).sum()
    }
}

/// `psi_j(a) = C(a_j + 1, j + 1) + ... + C(a_i + 1, i + 1)`.
pub fn pseudopower(a: u64, j: u32) -> Result<u128> {
    let dec = BinomialDecomposition::new(a, j)?;
    Ok(dec
        .parts
        .iter()
        .map(|&(n, t)| binomial(n + 1, t as u64 + 1))
        .sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckViolation {
    pub index: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub pass: bool,
    pub violations: Vec<CheckViolation>,
}

impl CheckOutcome {
    fn from(violations: Vec<CheckViolation>) -> Self {
        CheckOutcome {
            pass: violations.is_empty(),
            violations,
        }
    }

    pub fn first(&self) -> Option<&CheckViolation> {
        self.violations.first()
    }
}

/// `h_0 = 1`, `h_1 = d`, `h_m = 1`, and `0 < h_{j+1} <= psi_j(h_j)` for
/// `1 <= j <= m - 1`. Stops at the first violation.
pub fn macaulay_check(h: &[u64], d: u64) -> CheckOutcome {
    let v = |index, detail: String| CheckOutcome::from(vec![CheckViolation { index, detail }]);
    let m = h.len().saturating_sub(1);
    if h.first() != Some(&1) {
        return v(0, format!("h_0 = {:?}, expected 1", h.first()));
    }
    if m >= 1 && h[1] != d {
        return v(1, format!("h_1 = {}, expected d = {d}", h[1]));
    }
    if h[m] != 1 {
        return v(m, format!("h_{m} = {}, expected 1", h[m]));
    }
    for j in 1..m {
        if h[j] == 0 {
            return v(j, format!("h_{j} = 0"));
        }
        let bound = pseudopower(h[j], j as u32).expect("positive arguments");
        if h[j + 1] == 0 || h[j + 1] as u128 > bound {
            return v(
                j,
                format!("h_{} = {} not in (0, psi_{j}({}) = {bound}]", j + 1, h[j + 1], h[j]),
            );
        }
    }
    CheckOutcome::from(Vec::new())
}

/// `h_0 <= ... <= h_{floor(m/2)}` and `h_j <= h_{m-j}` for `j <= m/2`.
pub fn growth_check(h: &[u64]) -> CheckOutcome {
    let mut out = Vec::new();
    if h.is_empty() {
        return CheckOutcome::from(out);
    }
    let m = h.len() - 1;
    for j in 1..=m / 2 {
        if h[j - 1] > h[j] {
            out.push(CheckViolation {
                index: j,
                detail: format!("h_{} = {} > h_{j} = {}", j - 1, h[j - 1], h[j]),
            });
        }
    }
    for j in 0..=m / 2 {
        if h[j] > h[m - j] {
            out.push(CheckViolation {
                index: j,
                detail: format!("h_{j} = {} > h_{} = {}", h[j], m - j, h[m - j]),
            });
        }
    }
    CheckOutcome::from(out)
}

/// `h_j^2 >= h_{j-1} h_{j+1}` at every interior index; reports the first
/// failure.
pub fn log_concavity_check(h: &[u64]) -> CheckOutcome {
    let bad = (1..h.len().saturating_sub(1))
        .find(|&j| (h[j] as u128).pow(2) < h[j - 1] as u128 * h[j + 1] as u128);
    CheckOutcome::from(
        bad.map(|j| CheckViolation {
            index: j,
            detail: format!("h_{j}^2 = {} < h_{}*h_{} = {}", h[j] * h[j], j - 1, j + 1, h[j - 1] * h[j + 1]),
        })
        .into_iter()
        .collect(),
    )
}

/// First differences `h_j - h_{j-1}` are nonincreasing.
pub fn concave_differences_check(h: &[u64]) -> CheckOutcome {
    let diffs: Vec<i128> = h.windows(2).map(|w| w[1] as i128 - w[0] as i128).collect();
    let out = diffs
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] > w[0])
        .map(|(i, w)| CheckViolation {
            index: i + 2,
            detail: format!("difference rises from {} to {} at degree {}", w[0], w[1], i + 2),
        })
        .collect();
    CheckOutcome::from(out)
}

/// `min(C(d + j - 1, j), C(m, j))` for `j = 0..m`.
pub fn uniform_hilbert(d: usize, m: usize) -> Result<UniPoly> {
    if d < 1 || d > m {
        return Err(MalError::InvalidArgument(format!(
            "uniform Hilbert function needs 1 <= d <= m, got d = {d}, m = {m}"
        )));
    }
    let coeffs = (0..=m as u64)
        .map(|j| {
            let v = binomial(d as u64 + j - 1, j).min(binomial(m as u64, j));
            u64::try_from(v).map_err(|_| MalError::InvalidArgument("coefficient overflow".into()))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(UniPoly::new(coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilsonCheck {
    pub m: usize,
    pub j: usize,
    /// Determinant as computed; sign depends on basis order.
    pub det: String,
    pub formula: String,
    pub matches: bool,
}

/// Inclusion matrix: rows are degree-`(m - j)` monomials, columns degree-`j`
/// monomials, entry 1 when the column divides the row.
pub fn inclusion_matrix(m: usize, j: usize) -> RatMatrix {
    let rows = monomials_of_degree(m, m - j);
    let cols = monomials_of_degree(m, j);
    let mut w = RatMatrix::zeros(rows.len(), cols.len());
    for (r, a) in rows.iter().enumerate() {
        for (c, b) in cols.iter().enumerate() {
            if b.divides(*a) {
                w.set(r, c, Rational::one());
            }
        }
    }
    w
}

/// `prod_{h=0}^{j} C(m - j - h, j - h)^(C(m, h) - C(m, h - 1))`.
pub fn wilson_formula(m: usize, j: usize) -> BigUint {
    let mut out = BigUint::one();
    for h in 0..=j {
        let base = BigUint::from(binomial((m - j - h) as u64, (j - h) as u64));
        let prev = if h == 0 { 0 } else { binomial(m as u64, h as u64 - 1) };
        let exp = binomial(m as u64, h as u64) - prev;
        out *= num_traits::pow(base, exp as usize);
    }
    out
}

pub fn wilson_det_check(m: usize, j: usize) -> Result<WilsonCheck> {
    if 2 * j > m {
        return Err(MalError::InvalidArgument(format!(
            "inclusion matrix check needs 2j <= m, got m = {m}, j = {j}"
        )));
    }
    let w = inclusion_matrix(m, j);
    let det = w.det()?.to_integer();
    let formula = wilson_formula(m, j);
    let matches = det.abs() == BigInt::from(formula.clone());
    Ok(WilsonCheck {
        m,
        j,
        det: det.to_string(),
        formula: formula.to_string(),
        matches,
    })
}
