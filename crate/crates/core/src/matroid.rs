//! Column matroids of rational matrices.
//!
//! Column indices in this API are 0-based: bit `i` of a [`ColumnSubset`]
//! stands for column `i + 1` of the matrix in 1-based notation.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MalError, Result};
use crate::linalg::{RatMatrix, Rational};

/// A set of column indices, as a bitmask. Ground sets up to 64 columns.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColumnSubset(pub u64);

impl ColumnSubset {
    pub const EMPTY: ColumnSubset = ColumnSubset(0);

    pub fn full(m: usize) -> Self {
        assert!(m <= 64);
        if m == 64 {
            ColumnSubset(u64::MAX)
        } else {
            ColumnSubset((1u64 << m) - 1)
        }
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        ColumnSubset(indices.iter().fold(0u64, |acc, &i| acc | (1u64 << i)))
    }

    pub fn singleton(i: usize) -> Self {
        ColumnSubset(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        ColumnSubset(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Self {
        ColumnSubset(self.0 & !(1u64 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ColumnSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ColumnSubset(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        ColumnSubset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `[0, m)`.
    pub fn all(m: usize) -> impl Iterator<Item = ColumnSubset> {
        assert!(m < 64);
        (0..1u64 << m).map(ColumnSubset)
    }
}

impl fmt::Debug for ColumnSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Anything that can report ranks of column subsets. The matroid operations
/// built on top of rank are provided methods.
pub trait RankOracle {
    fn ground_size(&self) -> usize;

    fn rank(&self, s: ColumnSubset) -> usize;

    fn full_rank(&self) -> usize {
        self.rank(ColumnSubset::full(self.ground_size()))
    }

    fn is_independent(&self, s: ColumnSubset) -> bool {
        self.rank(s) == s.len()
    }

    /// Columns lying in the span of `s`.
    fn closure(&self, s: ColumnSubset) -> ColumnSubset {
        let r = self.rank(s);
        (0..self.ground_size())
            .filter(|&j| s.contains(j) || self.rank(s.with(j)) == r)
            .fold(s, ColumnSubset::with)
    }

    /// Lexicographically earliest basis of `span(s)` drawn from the closure
    /// of `s` (greedy scan in column order).
    fn lex_earliest_basis(&self, s: ColumnSubset) -> ColumnSubset {
        greedy_basis(self, self.closure(s))
    }

    /// Lexicographically earliest basis of `span(s)` drawn from `s` itself.
    /// This is the variant external activity is defined with.
    fn lex_earliest_basis_within(&self, s: ColumnSubset) -> ColumnSubset {
        greedy_basis(self, s)
    }

    /// Columns `j` in `closure(s) \ s` whose addition leaves the earliest
    /// basis unchanged.
    fn externally_active_set(&self, s: ColumnSubset) -> ColumnSubset {
        let cl = self.closure(s);
        let base = self.lex_earliest_basis_within(s);
        cl.minus(s)
            .iter()
            .filter(|&j| self.lex_earliest_basis_within(s.with(j)) == base)
            .fold(ColumnSubset::EMPTY, ColumnSubset::with)
    }

    fn external_activity(&self, s: ColumnSubset) -> usize {
        self.externally_active_set(s).len()
    }

    /// A coloop lies in every basis; removing it drops the full rank.
    fn is_coloop(&self, j: usize) -> bool {
        let full = ColumnSubset::full(self.ground_size());
        self.rank(full.without(j)) < self.rank(full)
    }

    fn independent_sets(&self) -> Vec<ColumnSubset> {
        ColumnSubset::all(self.ground_size())
            .filter(|&s| self.is_independent(s))
            .collect()
    }

    /// All flats, as closures of independent sets, sorted by bitmask.
    fn flats(&self) -> Vec<ColumnSubset> {
        let mut flats: Vec<ColumnSubset> = self
            .independent_sets()
            .into_iter()
            .map(|s| self.closure(s))
            .collect();
        flats.sort();
        flats.dedup();
        flats
    }
}

fn greedy_basis<R: RankOracle + ?Sized>(oracle: &R, pool: ColumnSubset) -> ColumnSubset {
    let mut basis = ColumnSubset::EMPTY;
    for j in pool.iter() {
        let cand = basis.with(j);
        if oracle.rank(cand) == cand.len() {
            basis = cand;
        }
    }
    basis
}

/// Scale a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize_direction(v: &[Rational]) -> Option<Vec<Rational>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.recip();
    Some(v.iter().map(|x| x * &inv).collect())
}

/// A `d x m` rational matrix of full row rank with no zero columns; it
/// represents its column matroid and generates `A(M)` via its rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RepMatrix {
    mat: RatMatrix,
    /// Columns of the input that were identically zero and dropped.
    stripped_zero_columns: usize,
    int_cols: Option<Vec<Vec<i128>>>,
}

impl RepMatrix {
    /// Validates full row rank and strips zero columns.
    pub fn new(mat: RatMatrix) -> Result<Self> {
        let rank = mat.rank();
        if rank != mat.rows() {
            return Err(MalError::Rank {
                rank,
                expected: mat.rows(),
            });
        }
        if mat.cols() > 64 {
            return Err(MalError::Shape(format!(
                "{} columns exceeds the 64-column limit",
                mat.cols()
            )));
        }
        let keep: Vec<usize> = (0..mat.cols()).filter(|&j| !mat.is_zero_column(j)).collect();
        let stripped = mat.cols() - keep.len();
        let mat = if stripped > 0 {
            mat.select_columns(&keep)
        } else {
            mat
        };
        let int_cols = integer_columns(&mat);
        Ok(RepMatrix {
            mat,
            stripped_zero_columns: stripped,
            int_cols,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(RatMatrix::from_i64(rows))
    }

    pub fn d(&self) -> usize {
        self.mat.rows()
    }

    pub fn m(&self) -> usize {
        self.mat.cols()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn stripped_zero_columns(&self) -> usize {
        self.stripped_zero_columns
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.mat.column(j)
    }

    pub fn rank_subset(&self, s: ColumnSubset) -> usize {
        self.rank(s)
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j >= self.m() {
            return Err(MalError::ColumnIndex {
                index: j,
                m: self.m(),
            });
        }
        Ok(())
    }

    /// Partition of the columns into classes of mutually proportional
    /// columns, ordered by first member.
    pub fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for j in 0..self.m() {
            let dir = normalize_direction(&self.column(j)).expect("no zero columns");
            match index.get(&dir) {
                Some(&c) => classes[c].push(j),
                None => {
                    index.insert(dir, classes.len());
                    classes.push(vec![j]);
                }
            }
        }
        classes
    }

    /// Drop column `j`. Fails if the rank falls below `d` (j is a coloop).
    pub fn delete(&self, j: usize) -> Result<RepMatrix> {
        self.check_index(j)?;
        RepMatrix::new(self.mat.remove_column(j))
    }

    /// The contraction `M/j`, with any zero columns it produces stripped.
    pub fn contract(&self, j: usize) -> Result<RepMatrix> {
        self.check_index(j)?;
        RepMatrix::new(contract_matrix(&self.mat, j)?)
    }

    /// Every `d`-subset of columns is a basis.
    pub fn is_uniform(&self) -> bool {
        let d = self.d();
        combinations(self.m(), d).all(|cols| self.rank(ColumnSubset::from_indices(&cols)) == d)
    }

    /// `(basis columns, N)` with `Q * M` equal to the identity on the basis
    /// columns (the lexicographically earliest basis) and `N` on the rest.
    pub fn standard_form(&self) -> (Vec<usize>, Vec<usize>, RatMatrix) {
        let full = ColumnSubset::full(self.m());
        let basis = self.lex_earliest_basis(full).to_vec();
        let rest: Vec<usize> = (0..self.m()).filter(|j| !basis.contains(j)).collect();
        let q = self
            .mat
            .select_columns(&basis)
            .inverse()
            .expect("basis columns are invertible");
        let qm = q.mul(&self.mat).expect("shapes agree");
        let n = qm.select_columns(&rest);
        (basis, rest, n)
    }

    /// Some square submatrix of `N` (in the standard form) with zero
    /// determinant, as `(row indices, original column indices)`.
    pub fn vanishing_minor(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let (_, rest, n) = self.standard_form();
        let h_max = self.d().min(rest.len());
        for h in 1..=h_max {
            for rows in combinations(self.d(), h) {
                for cols in combinations(rest.len(), h) {
                    let minor = n.select(&rows, &cols);
                    if minor.det().expect("square").is_zero() {
                        return Some((rows, cols.iter().map(|&c| rest[c]).collect()));
                    }
                }
            }
        }
        None
    }

    /// Uniformity via the nonvanishing of all minors of `N`.
    pub fn is_uniform_by_minors(&self) -> bool {
        self.vanishing_minor().is_none()
    }

    /// The rows of `M`, the generators of `A(M)`.
    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.mat.row_vecs()
    }

    /// Rank of a column subset by exact elimination, bypassing any fast path.
    pub fn rank_exact(&self, s: ColumnSubset) -> usize {
        self.mat.select_columns(&s.to_vec()).rank()
    }
}

impl RankOracle for RepMatrix {
    fn ground_size(&self) -> usize {
        self.m()
    }

    fn rank(&self, s: ColumnSubset) -> usize {
        if s.is_empty() {
            return 0;
        }
        if let Some(cols) = &self.int_cols {
            let picked: Vec<&[i128]> = s.iter().map(|j| cols[j].as_slice()).collect();
            if let Some(r) = bareiss_rank_i128(self.d(), &picked) {
                return r;
            }
        }
        self.rank_exact(s)
    }
}

/// Columns scaled to primitive integer vectors, when everything fits.
fn integer_columns(mat: &RatMatrix) -> Option<Vec<Vec<i128>>> {
    (0..mat.cols())
        .map(|j| {
            let col = mat.column(j);
            let lcm = col
                .iter()
                .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
            col.iter()
                .map(|x| {
                    let v = x.numer() * (&lcm / x.denom());
                    if v.abs() > num_bigint::BigInt::from(1i64 << 20) {
                        None
                    } else {
                        v.to_i128()
                    }
                })
                .collect::<Option<Vec<i128>>>()
        })
        .collect()
}

/// Fraction-free elimination on the columns given; `None` on overflow.
fn bareiss_rank_i128(rows: usize, cols: &[&[i128]]) -> Option<usize> {
    let ncols = cols.len();
    let mut a: Vec<i128> = vec![0; rows * ncols];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..rows {
            a[i * ncols + j] = col[i];
        }
    }
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * ncols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..ncols {
                a.swap(r * ncols + j, p * ncols + j);
            }
        }
        let piv = a[r * ncols + c];
        for i in r + 1..rows {
            let lead = a[i * ncols + c];
            for j in c + 1..ncols {
                let v = a[i * ncols + j]
                    .checked_mul(piv)?
                    .checked_sub(lead.checked_mul(a[r * ncols + j])?)?;
                a[i * ncols + j] = v / prev;
            }
            a[i * ncols + c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

/// Contraction recipe on a raw matrix: pivot on the last row `i` with a
/// nonzero entry in column `j`, clear row `i` elsewhere by column
/// operations, then drop row `i` and column `j`. Zero columns are kept.
pub fn contract_matrix(mat: &RatMatrix, j: usize) -> Result<RatMatrix> {
    if j >= mat.cols() {
        return Err(MalError::ColumnIndex {
            index: j,
            m: mat.cols(),
        });
    }
    let Some(i) = (0..mat.rows()).rev().find(|&i| !mat.get(i, j).is_zero()) else {
        return Err(MalError::ZeroColumn(j));
    };
    let mut work = mat.clone();
    let pivot = mat.get(i, j).clone();
    for h in 0..mat.cols() {
        if h == j || mat.get(i, h).is_zero() {
            continue;
        }
        let factor = mat.get(i, h) / &pivot;
        for row in 0..mat.rows() {
            let v = work.get(row, h) - &factor * mat.get(row, j);
            work.set(row, h, v);
        }
    }
    Ok(work.remove_row(i).remove_column(j))
}

/// Precomputed ranks of all `2^m` column subsets.
#[derive(Clone, Debug)]
pub struct RankTable {
    m: usize,
    ranks: Vec<u8>,
}

impl RankTable {
    pub const MAX_COLUMNS: usize = 24;

    pub fn new(rep: &RepMatrix) -> Result<Self> {
        let m = rep.m();
        if m > Self::MAX_COLUMNS {
            return Err(MalError::InvalidArgument(format!(
                "rank table over {m} columns exceeds the {} column cap",
                Self::MAX_COLUMNS
            )));
        }
        let ranks = (0..1usize << m)
            .into_par_iter()
            .with_min_len(256)
            .map(|s| rep.rank(ColumnSubset(s as u64)) as u8)
            .collect();
        Ok(RankTable { m, ranks })
    }
}

impl RankOracle for RankTable {
    fn ground_size(&self) -> usize {
        self.m
    }

    fn rank(&self, s: ColumnSubset) -> usize {
        self.ranks[s.0 as usize] as usize
    }
}

/// k-subsets of `[0, n)` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let c = cur.as_mut().unwrap();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - k + i {
                    c[i] += 1;
                    for t in i + 1..k {
                        c[t] = c[t - 1] + 1;
                    }
                    break Some(());
                }
            }
        };
        if next.is_none() {
            cur = None;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn s(ix: &[usize]) -> ColumnSubset {
        ColumnSubset::from_indices(ix)
    }

    fn u32_() -> RepMatrix {
        RepMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]).unwrap()
    }

    fn parallel() -> RepMatrix {
        RepMatrix::from_i64(&[&[1, 0, 1, 1], &[0, 1, 1, 1]]).unwrap()
    }

    #[test]
    fn rank_subset_examples() {
        assert_eq!(u32_().rank_subset(s(&[0, 1])), 2);
        assert_eq!(u32_().rank_subset(ColumnSubset::EMPTY), 0);
        assert_eq!(parallel().rank_subset(s(&[2, 3])), 1);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(u32_().closure(s(&[0, 1])), s(&[0, 1, 2]));
        assert_eq!(u32_().closure(ColumnSubset::EMPTY), ColumnSubset::EMPTY);
        assert_eq!(parallel().closure(s(&[2])), s(&[2, 3]));
    }

    #[test]
    fn lex_basis_examples() {
        let m = u32_();
        assert_eq!(m.lex_earliest_basis(s(&[0, 1, 2])), s(&[0, 1]));
        assert_eq!(m.lex_earliest_basis(s(&[1, 2])), s(&[0, 1]));
        assert_eq!(m.lex_earliest_basis(ColumnSubset::EMPTY), ColumnSubset::EMPTY);
        assert_eq!(m.lex_earliest_basis_within(s(&[1, 2])), s(&[1, 2]));
    }

    #[test]
    fn external_activity_examples() {
        let m = u32_();
        assert_eq!(m.externally_active_set(s(&[0, 1])), s(&[2]));
        assert_eq!(m.external_activity(s(&[0, 1])), 1);
        assert_eq!(m.externally_active_set(s(&[0, 2])), ColumnSubset::EMPTY);
        // closed set: nothing outside it in its span
        assert_eq!(m.externally_active_set(s(&[1])), ColumnSubset::EMPTY);
        assert_eq!(parallel().externally_active_set(s(&[2])), s(&[3]));
        assert_eq!(parallel().externally_active_set(s(&[3])), ColumnSubset::EMPTY);
    }

    #[test]
    fn parallel_class_examples() {
        assert_eq!(parallel().parallel_classes(), vec![vec![0], vec![1], vec![2, 3]]);
        assert_eq!(u32_().parallel_classes().len(), 3);
        assert!(matches!(
            RepMatrix::from_i64(&[&[1, 2], &[1, 2]]),
            Err(MalError::Rank { rank: 1, expected: 2 })
        ));
        let scaled = RepMatrix::from_i64(&[&[1, 0, -2], &[0, 1, 0]]).unwrap();
        assert_eq!(scaled.parallel_classes(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn zero_columns_are_stripped() {
        let m = RepMatrix::from_i64(&[&[1, 0, 0, 1], &[0, 0, 1, 1]]).unwrap();
        assert_eq!(m.m(), 3);
        assert_eq!(m.stripped_zero_columns(), 1);
    }

    #[test]
    fn delete_examples() {
        let m = u32_();
        assert_eq!(m.delete(2).unwrap().matrix(), &RatMatrix::from_i64(&[&[1, 0], &[0, 1]]));
        assert_eq!(m.delete(0).unwrap().matrix(), &RatMatrix::from_i64(&[&[0, 1], &[1, 1]]));
        let id = RepMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(id.delete(0), Err(MalError::Rank { .. })));
        assert!(id.delete(5).is_err());
    }

    #[test]
    fn contract_examples() {
        let m = u32_();
        let c = m.contract(2).unwrap();
        assert_eq!(c.matrix(), &RatMatrix::from_i64(&[&[1, -1]]));

        let id = RepMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(id.contract(1).unwrap().matrix(), &RatMatrix::from_i64(&[&[1]]));

        let raw = contract_matrix(&RatMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 1]]), 2).unwrap();
        assert_eq!(raw, RatMatrix::from_i64(&[&[1, 0]]));
        let stripped = RepMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 1]]).unwrap().contract(2).unwrap();
        assert_eq!(stripped.m(), 1);
        assert_eq!(stripped.stripped_zero_columns(), 1);

        assert!(matches!(
            contract_matrix(&RatMatrix::from_i64(&[&[1, 0], &[0, 0]]), 1),
            Err(MalError::ZeroColumn(1))
        ));
    }

    #[test]
    fn contract_uses_last_nonzero_row() {
        // column 0 has nonzeros in rows 0 and 1; the pivot must be row 1
        let m = RepMatrix::from_i64(&[&[1, 1, 0], &[2, 0, 1]]).unwrap();
        let c = m.contract(0).unwrap();
        // col1 -= 0/2 * col0 -> (1, 0); col2 -= 1/2 * col0 -> (-1/2, 0); drop row 1
        assert_eq!(c.matrix().row(0), &[rat(1), crate::linalg::ratio(-1, 2)]);
    }

    #[test]
    fn uniform_examples() {
        assert!(u32_().is_uniform());
        assert!(!parallel().is_uniform());
        let id = RepMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(id.is_uniform());
        assert!(id.is_uniform_by_minors());
        assert!(u32_().is_uniform_by_minors());
        assert!(!parallel().is_uniform_by_minors());
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(combinations(3, 3).collect::<Vec<_>>(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn fast_rank_matches_exact() {
        let m = RepMatrix::from_i64(&[&[3, -1, 2, 5, 0], &[1, 4, -2, 0, 5], &[0, 2, 7, 1, -3]]).unwrap();
        for sub in ColumnSubset::all(5) {
            assert_eq!(m.rank(sub), m.rank_exact(sub), "{sub:?}");
        }
        let t = RankTable::new(&m).unwrap();
        assert_eq!(t.rank(ColumnSubset::full(5)), 3);
    }
}
