//! Integer polynomials: Hilbert/Poincaré vectors and Tutte polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Polynomial in `t` with nonnegative integer coefficients, ascending degree.
/// Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly(Vec<u64>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn one() -> Self {
        UniPoly(vec![1])
    }

    /// `1 + t + ... + t^n`
    pub fn geometric(n: usize) -> Self {
        UniPoly(vec![1; n + 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn coeff(&self, j: usize) -> u64 {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Sum of coefficients, `P(1)`.
    pub fn eval_one(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        UniPoly::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.0);
        UniPoly(v)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return UniPoly::default();
        }
        let mut v = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }

    /// Coefficient vector padded with zeros to length `n + 1`.
    pub fn padded(&self, n: usize) -> Vec<u64> {
        (0..=n).map(|j| self.coeff(j)).collect()
    }
}

impl From<Vec<u64>> for UniPoly {
    fn from(v: Vec<u64>) -> Self {
        UniPoly::new(v)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn power(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}{}", superscript(e)),
    }
}

/// Renders as `1 + 2t + 3t² + t³`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match (c, j) {
                (c, 0) => c.to_string(),
                (1, j) => power("t", j),
                (c, j) => format!("{c}{}", power("t", j)),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Bivariate integer polynomial in `(x, y)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), i64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, xdeg: usize, ydeg: usize, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((xdeg, ydeg)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(xdeg, ydeg));
        }
    }

    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut p = BiPoly::zero();
        for &(a, b, c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn coeff(&self, xdeg: usize, ydeg: usize) -> i64 {
        self.terms.get(&(xdeg, ydeg)).copied().unwrap_or(0)
    }

    /// `((x-deg, y-deg), coefficient)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), &c) in &other.terms {
            out.add_term(a, b, c);
        }
        out
    }

    /// Dense coefficient grid: `grid[i][j]` is the coefficient of `x^i y^j`.
    pub fn to_grid(&self) -> Vec<Vec<i64>> {
        let xmax = self.terms.keys().map(|k| k.0).max();
        let ymax = self.terms.keys().map(|k| k.1).max();
        let (Some(xmax), Some(ymax)) = (xmax, ymax) else {
            return Vec::new();
        };
        (0..=xmax)
            .map(|i| (0..=ymax).map(|j| self.coeff(i, j)).collect())
            .collect()
    }

    pub fn from_grid(grid: &[Vec<i64>]) -> Self {
        let mut p = BiPoly::zero();
        for (i, row) in grid.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                p.add_term(i, j, c);
            }
        }
        p
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Highest total degree first, e.g. `x² + xy + y² + x + y`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<(usize, usize)> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let parts: Vec<String> = keys
            .iter()
            .map(|&(a, b)| {
                let c = self.terms[&(a, b)];
                let mono = format!("{}{}", power("x", a), power("y", b));
                match (c, mono.is_empty()) {
                    (c, true) => c.to_string(),
                    (1, false) => mono,
                    (-1, false) => format!("-{mono}"),
                    (c, false) => format!("{c}{mono}"),
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipoly_display() {
        assert_eq!(UniPoly::new(vec![1, 2, 3, 1]).to_string(), "1 + 2t + 3t² + t³");
        assert_eq!(UniPoly::new(vec![0, 0]).to_string(), "0");
        assert_eq!(UniPoly::new(vec![1, 0, 0]).coeffs(), &[1]);
    }

    #[test]
    fn unipoly_arith() {
        let p = UniPoly::new(vec![1, 1]);
        assert_eq!(p.mul(&p), UniPoly::new(vec![1, 2, 1]));
        assert_eq!(p.shift(2).add(&p), UniPoly::new(vec![1, 1, 1, 1]));
        assert_eq!(UniPoly::geometric(3).eval_one(), 4);
    }

    #[test]
    fn bipoly_grid_roundtrip() {
        let t = BiPoly::from_terms(&[(2, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1), (0, 2, 1)]);
        assert_eq!(BiPoly::from_grid(&t.to_grid()), t);
        assert_eq!(t.to_string(), "x² + xy + y² + x + y");
    }
}
