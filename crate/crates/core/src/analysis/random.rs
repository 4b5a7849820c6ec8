//! Seeded random representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MalError, Result};
use crate::linalg::{rat, RatMatrix};
use crate::matroid::RepMatrix;

pub const DEFAULT_ENTRY_BOUND: i64 = 5;
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniformityMode {
    #[default]
    Any,
    UniformOnly,
    NonUniformOnly,
}

/// Entries uniform in `[-entry_bound, entry_bound]`; resample until the
/// matrix has rank `d`, no zero column, and satisfies `mode`.
pub fn random_rep(d: usize, m: usize, seed: u64, entry_bound: i64, mode: UniformityMode) -> Result<RepMatrix> {
    if d > m {
        return Err(MalError::InvalidArgument(format!("need d <= m, got d = {d}, m = {m}")));
    }
    if entry_bound < 1 {
        return Err(MalError::InvalidArgument(format!(
            "entry bound must be at least 1, got {entry_bound}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let data = (0..d * m)
            .map(|_| rat(rng.gen_range(-entry_bound..=entry_bound)))
            .collect();
        let mat = RatMatrix::new(d, m, data)?;
        if (0..m).any(|j| mat.is_zero_column(j)) || mat.rank() != d {
            continue;
        }
        let rep = RepMatrix::new(mat)?;
        let ok = match mode {
            UniformityMode::Any => true,
            UniformityMode::UniformOnly => rep.is_uniform(),
            UniformityMode::NonUniformOnly => !rep.is_uniform(),
        };
        if ok {
            return Ok(rep);
        }
    }
    Err(MalError::SamplingExhausted {
        attempts: MAX_ATTEMPTS,
        what: format!("{d}x{m} matrix with entries in [-{entry_bound}, {entry_bound}] in mode {mode:?}"),
    })
}
