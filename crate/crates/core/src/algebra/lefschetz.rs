//! Injectivity of multiplication by `g^(m-2j) : A_j -> A_{m-j}` for a
//! full-support linear form `g` in `A_1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{build_graded_basis, nu, ElementOfB, GradedBasisFamily};
use crate::error::{MalError, Result};
use crate::format::rational_vec;
use crate::linalg::{rat, RatMatrix, Rational, SparseEchelon};
use crate::matroid::RepMatrix;

const FORM_SEED: u64 = 0x4c65_6673_6368_657a;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzCertificate {
    pub degree: usize,
    pub exponent: usize,
    /// Coefficients of `g` on `x_1..x_m`.
    #[serde(with = "rational_vec")]
    pub g: Vec<Rational>,
    pub source_dim: usize,
    pub image_rank: usize,
    pub injective: bool,
}

/// A form `g = p M` with every coefficient nonzero. Entries of `p` are drawn
/// from `{-h..h} \ {0}` with `h` growing until one works.
pub fn full_support_form(rep: &RepMatrix, rng: &mut impl Rng) -> Result<(Vec<Rational>, ElementOfB)> {
    let d = rep.d();
    let m = rep.m();
    let mat = rep.matrix();
    for h in 1i64..=64 {
        for _ in 0..8 {
            let p: Vec<Rational> = (0..d)
                .map(|_| {
                    let v = rng.gen_range(1..=h);
                    rat(if rng.gen_bool(0.5) { v } else { -v })
                })
                .collect();
            let row = RatMatrix::new(1, d, p.clone())?.mul(mat)?;
            let g = ElementOfB::linear_form(row.row(0));
            if nu(&g)? == m {
                return Ok((p, g));
            }
        }
    }
    Err(MalError::OracleMismatch(
        "no full-support linear form found in A_1".into(),
    ))
}

fn in_row_space(rep: &RepMatrix, g: &ElementOfB) -> Result<bool> {
    let mut rows = rep.rows();
    rows.push(g.linear_coefficients(rep.m()));
    Ok(RatMatrix::from_rows(rows)?.rank() == rep.d())
}

/// Checks that `g^(m-2j)` maps `A_j` injectively into `A_{m-j}`. When `g` is
/// omitted a full-support form is sampled deterministically.
pub fn lefschetz_injective(
    rep: &RepMatrix,
    j: usize,
    g: Option<&ElementOfB>,
) -> Result<LefschetzCertificate> {
    let family = build_graded_basis(rep);
    lefschetz_injective_in(rep, &family, j, g)
}

/// Same as [`lefschetz_injective`] with a precomputed basis family.
pub fn lefschetz_injective_in(
    rep: &RepMatrix,
    family: &GradedBasisFamily,
    j: usize,
    g: Option<&ElementOfB>,
) -> Result<LefschetzCertificate> {
    let m = rep.m();
    if 2 * j > m {
        return Err(MalError::InvalidArgument(format!(
            "degree {j} exceeds m/2 = {}",
            m as f64 / 2.0
        )));
    }
    let g = match g {
        Some(g) => {
            if nu(g)? != m {
                return Err(MalError::InvalidArgument(
                    "g must have every coefficient nonzero".into(),
                ));
            }
            if !in_row_space(rep, g)? {
                return Err(MalError::InvalidArgument("g is not in A_1".into()));
            }
            g.clone()
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(FORM_SEED);
            full_support_form(rep, &mut rng)?.1
        }
    };
    let exponent = m - 2 * j;
    let power = g.pow(exponent);
    let source = family.degree(j);
    let mut ech = SparseEchelon::new();
    for b in source {
        ech.insert(power.mul(b).to_sparse());
    }
    Ok(LefschetzCertificate {
        degree: j,
        exponent,
        g: g.linear_coefficients(m),
        source_dim: source.len(),
        image_rank: ech.dim(),
        injective: ech.dim() == source.len(),
    })
}
