//! The algebra `A(M)` built directly inside `B = k[x_1..x_m]/(x_1^2..x_m^2)`.
//!
//! `B` has the squarefree monomials as a basis, so an element is a sparse map
//! from bitmasks to rationals and the product of two monomials is their union
//! when disjoint and zero otherwise. `A(M)` is the subalgebra generated by the
//! rows of `M` read as linear forms; its degree-`j` piece is spanned by
//! products of `j` rows.

mod ideal;
mod lefschetz;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{MalError, Result};
use crate::linalg::{Rational, SparseEchelon, SparseVec};
use crate::matroid::RepMatrix;
use crate::poly::UniPoly;

pub use ideal::{hilbert_via_ideal, hilbert_via_ideal_detailed, IdealCertificate, IdealSampling};
pub use lefschetz::{
    full_support_form, lefschetz_injective, lefschetz_injective_in, LefschetzCertificate,
};

/// A squarefree monomial `x^S`, with `S` as a bitmask (bit `i` is `x_{i+1}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquarefreeMonomial(pub u64);

impl SquarefreeMonomial {
    pub const ONE: SquarefreeMonomial = SquarefreeMonomial(0);

    pub fn var(i: usize) -> Self {
        SquarefreeMonomial(1 << i)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Product in `B`: `None` when the supports overlap (some `x_i^2`).
    pub fn mul(self, other: Self) -> Option<Self> {
        (self.0 & other.0 == 0).then_some(SquarefreeMonomial(self.0 | other.0))
    }

    pub fn divides(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }
}

impl fmt::Debug for SquarefreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let vars: Vec<String> = (0..64)
            .filter(|i| self.0 >> i & 1 == 1)
            .map(|i| format!("x{}", i + 1))
            .collect();
        write!(f, "{}", vars.join("*"))
    }
}

/// All squarefree monomials of degree `j` in `m` variables, increasing
/// bitmask order.
pub fn monomials_of_degree(m: usize, j: usize) -> Vec<SquarefreeMonomial> {
    if j > m {
        return Vec::new();
    }
    if j == 0 {
        return vec![SquarefreeMonomial::ONE];
    }
    let limit = 1u64 << m;
    let mut out = Vec::new();
    let mut v: u64 = (1u64 << j) - 1;
    while v < limit {
        out.push(SquarefreeMonomial(v));
        // next mask with the same popcount
        let t = v | (v - 1);
        let next = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
        if next <= v {
            break;
        }
        v = next;
    }
    out
}

/// An element of `B`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ElementOfB {
    terms: BTreeMap<SquarefreeMonomial, Rational>,
}

impl fmt::Debug for ElementOfB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl ElementOfB {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(SquarefreeMonomial::ONE, Rational::one())
    }

    pub fn monomial(mono: SquarefreeMonomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(mono, c);
        e
    }

    /// `sum_i coeffs[i] x_{i+1}`
    pub fn linear_form(coeffs: &[Rational]) -> Self {
        let mut e = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(SquarefreeMonomial::var(i), c.clone());
        }
        e
    }

    pub fn add_term(&mut self, mono: SquarefreeMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (SquarefreeMonomial, &Rational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mono: SquarefreeMonomial) -> Rational {
        self.terms.get(&mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Coefficients of a linear form as a length-`m` vector.
    pub fn linear_coefficients(&self, m: usize) -> Vec<Rational> {
        (0..m).map(|i| self.coeff(SquarefreeMonomial::var(i))).collect()
    }

    pub fn mul(&self, other: &ElementOfB) -> ElementOfB {
        let mut out = ElementOfB::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(ab) = a.mul(*b) {
                    out.add_term(ab, x * y);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> ElementOfB {
        (0..k).fold(ElementOfB::one(), |acc, _| acc.mul(self))
    }

    /// Inverse of [`Self::to_sparse`].
    pub fn from_sparse(v: SparseVec) -> Self {
        let mut e = Self::zero();
        for (k, c) in v {
            e.add_term(SquarefreeMonomial(k as u64), c);
        }
        e
    }

    /// Coordinates keyed by monomial bitmask.
    pub fn to_sparse(&self) -> SparseVec {
        self.terms
            .iter()
            .map(|(m, c)| (m.0 as usize, c.clone()))
            .collect()
    }
}

fn require_linear(f: &ElementOfB) -> Result<()> {
    if f.is_zero() || f.homogeneous_degree() == Some(1) {
        Ok(())
    } else {
        Err(MalError::InvalidArgument(
            "expected a homogeneous linear form".into(),
        ))
    }
}

/// `f * e` for a linear form `f`.
pub fn multiply_linear(f: &ElementOfB, e: &ElementOfB) -> Result<ElementOfB> {
    require_linear(f)?;
    if !e.is_zero() && e.homogeneous_degree().is_none() {
        return Err(MalError::InvalidArgument(
            "expected a homogeneous element".into(),
        ));
    }
    Ok(f.mul(e))
}

/// Number of nonzero coefficients of a linear form; `f^nu != 0 = f^(nu+1)`.
pub fn nu(f: &ElementOfB) -> Result<usize> {
    require_linear(f)?;
    Ok(f.terms.len())
}

/// Bases of the graded pieces `A_0, ..., A_m`.
#[derive(Clone, Debug)]
pub struct GradedBasisFamily {
    degrees: Vec<Vec<ElementOfB>>,
}

impl GradedBasisFamily {
    pub fn degree(&self, j: usize) -> &[ElementOfB] {
        self.degrees.get(j).map_or(&[], Vec::as_slice)
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn dims(&self) -> Vec<u64> {
        self.degrees.iter().map(|b| b.len() as u64).collect()
    }

    pub fn hilbert(&self) -> UniPoly {
        UniPoly::new(self.dims())
    }
}

/// The rows of `M` as linear forms of `B`.
pub fn generators(rep: &RepMatrix) -> Vec<ElementOfB> {
    rep.rows().iter().map(|r| ElementOfB::linear_form(r)).collect()
}

fn monomial_count(m: usize, j: usize) -> usize {
    (0..j).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

/// `A_{j+1}` is spanned by `f_i * b` over generators `f_i` and a basis of
/// `A_j`. Each degree keeps the reduced echelon form of that span, which is
/// much sparser than the raw products once `A_j` fills most of `B_j`.
pub fn build_graded_basis(rep: &RepMatrix) -> GradedBasisFamily {
    let gens = generators(rep);
    let mut degrees = vec![vec![ElementOfB::one()]];
    let m = rep.m();
    for j in 0..m {
        let prev = degrees.last().expect("nonempty");
        let full = monomial_count(m, j + 1);
        let mut ech = SparseEchelon::new();
        'span: for b in prev {
            for f in &gens {
                ech.insert(f.mul(b).to_sparse());
                if ech.dim() == full {
                    break 'span;
                }
            }
        }
        degrees.push(ech.reduced_basis().into_iter().map(ElementOfB::from_sparse).collect());
    }
    GradedBasisFamily { degrees }
}

pub fn hilbert_direct(rep: &RepMatrix) -> UniPoly {
    build_graded_basis(rep).hilbert()
}

/// Closed form for `d = 2` from the parallel class sizes `e_h`:
/// `dim A_j = j + 1 - sum_{i<=j} w_i (j - i + 1)` with
/// `w_i = #{h : 1 + m - e_h = i}`.
pub fn hilbert_d2_closed_form(rep: &RepMatrix) -> Result<UniPoly> {
    if rep.d() != 2 {
        return Err(MalError::InvalidArgument(format!(
            "closed form needs d = 2, got d = {}",
            rep.d()
        )));
    }
    let m = rep.m();
    let mut w = vec![0i64; m + 2];
    for class in rep.parallel_classes() {
        w[1 + m - class.len()] += 1;
    }
    let dims = (0..=m)
        .map(|j| {
            let sub: i64 = (0..=j).map(|i| w[i] * (j - i + 1) as i64).sum();
            let v = j as i64 + 1 - sub;
            u64::try_from(v).map_err(|_| {
                MalError::TheoremViolation(format!("closed form gave {v} at degree {j}"))
            })
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(UniPoly::new(dims))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn x(i: usize) -> ElementOfB {
        ElementOfB::monomial(SquarefreeMonomial::var(i), rat(1))
    }

    #[test]
    fn multiply_linear_examples() {
        let x1x2 = ElementOfB::monomial(SquarefreeMonomial(0b11), rat(1));
        assert_eq!(multiply_linear(&x(0), &x(1)).unwrap(), x1x2);
        assert!(multiply_linear(&x(0), &x(0)).unwrap().is_zero());
        let s = ElementOfB::linear_form(&[rat(1), rat(1)]);
        assert_eq!(
            multiply_linear(&s, &s).unwrap(),
            ElementOfB::monomial(SquarefreeMonomial(0b11), rat(2))
        );
        assert!(multiply_linear(&x1x2, &x(0)).is_err());
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&ElementOfB::linear_form(&[rat(1), rat(1), rat(1)])).unwrap(), 3);
        assert_eq!(nu(&ElementOfB::zero()).unwrap(), 0);
        assert_eq!(nu(&ElementOfB::linear_form(&[rat(0), rat(5)])).unwrap(), 1);
    }

    #[test]
    fn nilpotency_index() {
        let f = ElementOfB::linear_form(&[rat(2), rat(0), rat(-3), rat(1)]);
        let n = nu(&f).unwrap();
        assert!(!f.pow(n).is_zero());
        assert!(f.pow(n + 1).is_zero());
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_degree(4, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert!(ms.iter().all(|m| m.degree() == 2));
        assert_eq!(monomials_of_degree(3, 0), vec![SquarefreeMonomial::ONE]);
        assert_eq!(monomials_of_degree(3, 3), vec![SquarefreeMonomial(0b111)]);
        assert!(monomials_of_degree(2, 3).is_empty());
    }

    #[test]
    fn graded_basis_examples() {
        let u32_ = RepMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(build_graded_basis(&u32_).dims(), vec![1, 2, 3, 1]);

        let line = RepMatrix::from_i64(&[&[1, 1, 1]]).unwrap();
        let fam = build_graded_basis(&line);
        assert_eq!(fam.dims(), vec![1, 1, 1, 1]);
        let f = ElementOfB::linear_form(&[rat(1), rat(1), rat(1)]);
        for j in 0..=3 {
            let mut ech = SparseEchelon::new();
            ech.insert(fam.degree(j)[0].to_sparse());
            assert!(ech.contains(&f.pow(j).to_sparse()));
        }

        let id = RepMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(build_graded_basis(&id).dims(), vec![1, 2, 1]);
    }

    #[test]
    fn hilbert_direct_examples() {
        let par = RepMatrix::from_i64(&[&[1, 0, 1, 1], &[0, 1, 1, 1]]).unwrap();
        assert_eq!(hilbert_direct(&par).coeffs(), &[1, 2, 3, 3, 1]);
        let id4 = RepMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
            .unwrap();
        assert_eq!(hilbert_direct(&id4).coeffs(), &[1, 4, 6, 4, 1]);
    }

    #[test]
    fn d2_closed_form_examples() {
        let par = RepMatrix::from_i64(&[&[1, 0, 1, 1], &[0, 1, 1, 1]]).unwrap();
        assert_eq!(hilbert_d2_closed_form(&par).unwrap().coeffs(), &[1, 2, 3, 3, 1]);
        let u32_ = RepMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(hilbert_d2_closed_form(&u32_).unwrap().coeffs(), &[1, 2, 3, 1]);
        let id = RepMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(hilbert_d2_closed_form(&id).unwrap().coeffs(), &[1, 2, 1]);
        let line = RepMatrix::from_i64(&[&[1, 1]]).unwrap();
        assert!(hilbert_d2_closed_form(&line).is_err());
    }
}
