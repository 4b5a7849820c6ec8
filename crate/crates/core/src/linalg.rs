//! Exact linear algebra over the rationals.
//!
//! Everything here is dense and exact: [`RatMatrix`] stores `BigRational`
//! entries row-major, elimination pivots on the first nonzero entry in
//! column order, and integer matrices take a fraction-free (Bareiss) path
//! for determinants. [`SparseEchelon`] is the incremental span tracker used
//! by the graded-algebra code, where vectors live in coordinate spaces of
//! size `C(m, j)` but are usually sparse.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::MalError;

/// The scalar field. Always reduced, denominator positive.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, MalError> {
        if data.len() != rows * cols {
            return Err(MalError::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Build from row vectors. All rows must have the same length; an empty
    /// row list gives a `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MalError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MalError::Shape("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(RatMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer convenience constructor, mostly for tests and generators.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().map(|&x| rat(x))).collect(),
        }
    }

    /// A `rows x cols` integer matrix from a flat row-major slice.
    pub fn from_i64_flat(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RatMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| rat(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, MalError> {
        if self.cols != other.rows {
            return Err(MalError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Submatrix with the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (c, &j) in cols.iter().enumerate() {
                out.set(i, c, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (r, &i) in rows.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                out.set(r, c, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn remove_column(&self, j: usize) -> RatMatrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select_columns(&keep)
    }

    pub fn remove_row(&self, i: usize) -> RatMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let all: Vec<usize> = (0..self.cols).collect();
        self.select(&keep, &all)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a.get(r, c).recip();
            for j in c..a.cols {
                let idx = r * a.cols + j;
                if !a.data[idx].is_zero() {
                    a.data[idx] *= &inv;
                }
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let factor = a.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    let t = a.get(r, j);
                    if t.is_zero() {
                        continue;
                    }
                    let sub = &factor * t;
                    a.data[i * a.cols + j] -= sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        // Row echelon is enough; no need for the back-substitution in rref.
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let piv = a.get(r, c).clone();
            for i in r + 1..a.rows {
                let factor = a.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                let factor = factor / &piv;
                for j in c..a.cols {
                    let t = a.get(r, j);
                    if t.is_zero() {
                        continue;
                    }
                    let sub = &factor * t;
                    a.data[i * a.cols + j] -= sub;
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right null space `{ v : self * v = 0 }`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<Rational, MalError> {
        if self.rows != self.cols {
            return Err(MalError::Shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.is_integral() {
            let ints: Vec<BigInt> = self.data.iter().map(|x| x.to_integer()).collect();
            return Ok(Rational::from_integer(bareiss_det(self.rows, ints)));
        }
        let mut a = self.clone();
        let n = a.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            for i in c + 1..n {
                let factor = a.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                let factor = factor / &piv;
                for j in c..n {
                    let t = a.get(c, j);
                    if t.is_zero() {
                        continue;
                    }
                    let sub = &factor * t;
                    a.data[i * n + j] -= sub;
                }
            }
            det *= piv;
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<RatMatrix, MalError> {
        if self.rows != self.cols {
            return Err(MalError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(MalError::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.select(&rows, &cols))
    }
}

/// Fraction-free determinant of an integer matrix (row-major, `n x n`).
fn bareiss_det(n: usize, mut a: Vec<BigInt>) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[n * n - 1]
}

/// Dimension of the span of a list of equal-length vectors.
pub fn span_dim(vectors: &[Vec<Rational>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.len();
    assert!(
        vectors.iter().all(|v| v.len() == cols),
        "span_dim: vectors of unequal length"
    );
    let mut ech = SparseEchelon::new();
    for v in vectors {
        ech.insert(SparseVec::from_dense(v));
    }
    ech.dim()
}

/// Sparse vector keyed by coordinate index; zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Rational>;

pub trait FromDense {
    fn from_dense(v: &[Rational]) -> Self;
}

impl FromDense for SparseVec {
    fn from_dense(v: &[Rational]) -> Self {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    }
}

/// Integer scalars for fraction-free elimination. Operations return `None`
/// on overflow so a fixed-width attempt can fall back to `BigInt`.
trait EchelonScalar: Clone + fmt::Debug {
    fn zero_value() -> Self;
    fn vanishes(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl EchelonScalar for i128 {
    fn zero_value() -> Self {
        0
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn gcd(&self, other: &Self) -> Self {
        // operands are never both i128::MIN in practice; unsigned_abs keeps
        // the result exact otherwise
        let (mut a, mut b) = (self.unsigned_abs(), other.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        i128::try_from(a).unwrap_or(i128::MAX)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        i128::try_from(x).ok()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl EchelonScalar for BigInt {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type Row<T> = Vec<(usize, T)>;

/// Divide by the content and make the leading entry positive.
fn make_primitive<T: EchelonScalar>(v: &mut [(usize, T)]) -> Option<()> {
    let mut g = T::zero_value();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if v.first().is_some_and(|(_, x)| x.is_negative()) {
        g = g.checked_neg()?;
    }
    if !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
    Some(())
}

/// `a v - b row` over the coordinates after the pivot, as a sorted merge.
fn combine<T: EchelonScalar>(v: &[(usize, T)], a: &T, b: &T, row: &[(usize, T)]) -> Option<Row<T>> {
    let mut out = Vec::with_capacity(v.len() + row.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < row.len() {
        let take_v = j == row.len() || (i < v.len() && v[i].0 < row[j].0);
        let take_row = i == v.len() || (j < row.len() && row[j].0 < v[i].0);
        let (k, x) = if take_v {
            let x = if a.is_one() { v[i].1.clone() } else { v[i].1.checked_mul(a)? };
            i += 1;
            (v[i - 1].0, x)
        } else if take_row {
            j += 1;
            (row[j - 1].0, T::zero_value().checked_sub(&b.checked_mul(&row[j - 1].1)?)?)
        } else {
            let left = if a.is_one() { v[i].1.clone() } else { v[i].1.checked_mul(a)? };
            let x = left.checked_sub(&b.checked_mul(&row[j].1)?)?;
            i += 1;
            j += 1;
            (v[i - 1].0, x)
        };
        if !x.vanishes() {
            out.push((k, x));
        }
    }
    Some(out)
}

#[derive(Clone, Debug)]
struct IntEchelon<T> {
    rows: BTreeMap<usize, Row<T>>,
}

impl<T: EchelonScalar> IntEchelon<T> {
    fn new() -> Self {
        Self { rows: BTreeMap::new() }
    }

    fn reduce(&self, mut v: Row<T>) -> Option<Row<T>> {
        make_primitive(&mut v)?;
        let mut start = 0;
        while let Some(pos) = v[start..].iter().position(|(k, _)| self.rows.contains_key(k)) {
            let pos = start + pos;
            let (k, b) = v[pos].clone();
            let row = &self.rows[&k];
            let g = row[0].1.gcd(&b);
            let (a, b) = (row[0].1.div_exact(&g), b.div_exact(&g));
            let mut head: Row<T> = Vec::with_capacity(pos);
            for (idx, x) in &v[..pos] {
                head.push((*idx, if a.is_one() { x.clone() } else { x.checked_mul(&a)? }));
            }
            let tail = combine(&v[pos + 1..], &a, &b, &row[1..])?;
            head.extend(tail);
            v = head;
            if !a.is_one() {
                make_primitive(&mut v)?;
            }
            start = pos;
        }
        Some(v)
    }

    /// `Some(true)` if `v` was new, `None` on overflow (nothing is changed).
    fn insert(&mut self, v: Row<T>) -> Option<bool> {
        let mut r = self.reduce(v)?;
        let Some(&(pivot, _)) = r.first() else {
            return Some(false);
        };
        make_primitive(&mut r)?;
        self.rows.insert(pivot, r);
        Some(true)
    }
}

fn convert<S: EchelonScalar, T: EchelonScalar>(v: &[(usize, S)]) -> Option<Row<T>> {
    v.iter().map(|(k, x)| Some((*k, T::from_big(&x.to_big())?))).collect()
}

/// Clear denominators; the result is a nonzero multiple of `v`.
fn integral(v: &SparseVec) -> Row<BigInt> {
    let lcm = v.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|(k, x)| (*k, x.numer() * (&lcm / x.denom()))).collect()
}

/// Incrementally maintained echelon basis of a subspace.
///
/// Rows are kept fraction-free: integer entries with content 1 and a positive
/// entry at the smallest coordinate (the pivot). Pivots are distinct, so
/// reducing an incoming vector against the rows in increasing pivot order
/// removes every pivot coordinate; what remains is zero exactly when the
/// vector was already in the span. Arithmetic runs in `i128` until something
/// overflows, then the whole basis moves to `BigInt`.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    small: Option<IntEchelon<i128>>,
    big: IntEchelon<BigInt>,
}

impl Default for SparseEchelon {
    fn default() -> Self {
        Self {
            small: Some(IntEchelon::new()),
            big: IntEchelon::new(),
        }
    }
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        match &self.small {
            Some(e) => e.rows.len(),
            None => self.big.rows.len(),
        }
    }

    fn big_rows(&self) -> Vec<Row<BigInt>> {
        match &self.small {
            Some(e) => e.rows.values().map(|r| convert(r).expect("widening")).collect(),
            None => self.big.rows.values().cloned().collect(),
        }
    }

    /// The stored rows, in pivot order.
    pub fn basis(&self) -> impl Iterator<Item = SparseVec> {
        self.big_rows().into_iter().map(|row| {
            row.into_iter()
                .map(|(k, x)| (k, Rational::from_integer(x)))
                .collect()
        })
    }

    fn promote(&mut self) {
        if let Some(small) = self.small.take() {
            for (k, row) in small.rows {
                self.big.rows.insert(k, convert(&row).expect("widening"));
            }
        }
    }

    fn reduce_big(&mut self, v: &SparseVec) -> Row<BigInt> {
        let int = integral(v);
        if let Some(small) = &self.small {
            if let Some(r) = convert(&int).and_then(|w| small.reduce(w)) {
                return convert(&r).expect("widening");
            }
            self.promote();
        }
        self.big.reduce(int).expect("BigInt never overflows")
    }

    /// A nonzero multiple of `v` reduced modulo the current span.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut scratch = self.clone();
        scratch
            .reduce_big(&v)
            .into_iter()
            .map(|(k, x)| (k, Rational::from_integer(x)))
            .collect()
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let int = integral(&v);
        if let Some(small) = &mut self.small {
            if let Some(added) = convert(&int).and_then(|w| small.insert(w)) {
                return added;
            }
            self.promote();
        }
        self.big.insert(int).expect("BigInt never overflows")
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// The reduced row echelon basis: monic at each pivot, zero at every
    /// other pivot.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for row in self.big_rows().into_iter().rev() {
            let lead = Rational::from_integer(row[0].1.clone());
            let mut r: SparseVec = row
                .into_iter()
                .map(|(k, x)| (k, Rational::from_integer(x) / &lead))
                .collect();
            let later: Vec<usize> = r.keys().skip(1).filter(|k| done.contains_key(k)).copied().collect();
            for p in later {
                let Some(c) = r.remove(&p) else { continue };
                for (idx, x) in done[&p].range(p + 1..) {
                    let entry = r.entry(*idx).or_insert_with(Rational::zero);
                    *entry -= &c * x;
                    if entry.is_zero() {
                        r.remove(idx);
                    }
                }
            }
            done.insert(*r.keys().next().expect("nonzero row"), r);
        }
        done.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(2).rank(), 2);
        assert_eq!(RatMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]).rank(), 2);
        assert_eq!(RatMatrix::from_i64(&[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(RatMatrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn span_dim_examples() {
        let v = |xs: &[i64]| xs.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert_eq!(span_dim(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]), 2);
        assert_eq!(span_dim(&[]), 0);
        assert_eq!(span_dim(&[v(&[1, 2, 3]), v(&[2, 4, 6])]), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(2).kernel_basis().is_empty());

        let k = RatMatrix::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -k[0][1].clone());

        let m = RatMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // (1, 1, -1) up to scale
        let scale = k[0][0].clone();
        let normalized: Vec<Rational> = k[0].iter().map(|x| x / &scale).collect();
        assert_eq!(normalized, vec![rat(1), rat(1), rat(-1)]);
        assert!(m.apply(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn det_examples() {
        assert_eq!(RatMatrix::identity(3).det().unwrap(), rat(1));
        assert_eq!(RatMatrix::from_i64(&[&[1, 1], &[1, 1]]).det().unwrap(), rat(0));
        let m = RatMatrix::new(2, 2, vec![ratio(1, 2), rat(1), rat(3), ratio(2, 3)]).unwrap();
        assert_eq!(m.det().unwrap(), ratio(1, 3) - rat(3));
        assert!(RatMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn bareiss_needs_pivot_swap() {
        let m = RatMatrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        // cofactor expansion: 0*(0+9) - 1*(8-12) + 2*(-3-0) = -2
        assert_eq!(m.det().unwrap(), rat(-2));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert!(matches!(
            RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(),
            Err(MalError::Singular)
        ));
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = SparseEchelon::new();
        let v = |xs: &[i64]| SparseVec::from_dense(&xs.iter().map(|&x| rat(x)).collect::<Vec<_>>());
        assert!(e.insert(v(&[0, 1, 1])));
        assert!(e.insert(v(&[1, 1, 0])));
        assert!(!e.insert(v(&[1, 2, 1])));
        assert!(e.insert(v(&[0, 0, 5])));
        assert!(!e.insert(v(&[0, 0, 0])));
        assert_eq!(e.dim(), 3);
        let rref = e.reduced_basis();
        let dense: Vec<Vec<Rational>> = rref
            .iter()
            .map(|r| (0..3).map(|i| r.get(&i).cloned().unwrap_or_else(Rational::zero)).collect())
            .collect();
        assert_eq!(dense, vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]]);
    }

    #[test]
    fn reduced_basis_spans_the_same_space() {
        let v = |xs: &[i64]| SparseVec::from_dense(&xs.iter().map(|&x| rat(x)).collect::<Vec<_>>());
        let mut e = SparseEchelon::new();
        e.insert(v(&[2, 4, 0, 6]));
        e.insert(v(&[1, 3, 1, 1]));
        let rref = e.reduced_basis();
        assert_eq!(rref.len(), 2);
        // pivots at 0 and 1; each row vanishes at the other's pivot
        assert_eq!(rref[0].get(&1), None);
        assert_eq!(rref[1].get(&0), None);
        let mut f = SparseEchelon::new();
        for r in &rref {
            f.insert(r.clone());
        }
        assert!(f.contains(&v(&[2, 4, 0, 6])) && f.contains(&v(&[1, 3, 1, 1])));
        // with i128 overflow forcing the BigInt path
        let mut g = SparseEchelon::new();
        assert!(g.insert(v(&[i64::MAX, i64::MAX - 1, 0])));
        assert!(g.insert(v(&[i64::MAX - 1, 1, i64::MAX])));
        assert!(!g.insert(v(&[1, i64::MAX - 2, -i64::MAX])));
        assert!(g.insert(v(&[0, 0, 1])));
        assert_eq!(g.dim(), 3);
    }
}
