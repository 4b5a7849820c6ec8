//! Hilbert functions of algebras generated by linear forms in
//! `k[x_1..x_m]/(x_i^2)`, computed exactly from a representing matrix.
//!
//! `A(M)` is the subalgebra generated by the rows of a rank-`d` matrix `M`.
//! Its Hilbert function depends only on the column matroid of `M` and equals
//! a specialization of the Tutte polynomial; this crate computes it by
//! several independent routes and cross-checks them.

pub mod algebra;
pub mod analysis;
pub mod equiv;
pub mod error;
pub mod format;
pub mod laurent;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod tutte;

pub use algebra::{build_graded_basis, hilbert_d2_closed_form, hilbert_direct, hilbert_via_ideal, lefschetz_injective};
pub use equiv::{algebras_isomorphic, decide_equivalence, linearly_equivalent, EquivalenceWitness, Verdict};
pub use error::{MalError, Result};
pub use laurent::LaurentPoly;
pub use linalg::{RatMatrix, Rational};
pub use matroid::{ColumnSubset, RankOracle, RankTable, RepMatrix};
pub use poly::{BiPoly, UniPoly};
pub use tutte::{hilbert_via_activity, poincare_delcon, poincare_from_tutte, tutte_rank_expansion};
