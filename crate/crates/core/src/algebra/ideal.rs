//! Hilbert function of `R / J(M)` with `R = k[z_1..z_d]` and `J(M)` generated
//! by the powers `p^(1 + nu(pM))` of linear forms `p`.
//!
//! The zero pattern of `pM` is always a flat `F`, and then `nu(pM) = m - |F|`,
//! so the generators are sampled flat by flat from the annihilator of the
//! columns in `F`. A finite sample spans a subspace of the true `J(M)_j`,
//! which means the computed quotient dimensions can only be too large;
//! agreement with the direct construction certifies both.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MalError, Result};
use crate::linalg::{rat, RatMatrix, Rational, SparseEchelon, SparseVec};
use crate::matroid::{ColumnSubset, RankOracle, RankTable, RepMatrix};
use crate::poly::UniPoly;

/// Exponent bits per variable in a packed monomial key.
const EXP_BITS: u32 = 8;
const MAX_VARS: usize = 8;
/// Annihilator basis vectors are combined with coefficients in
/// `[-COMBINATION_BOUND, COMBINATION_BOUND] \ {0}`. Small values keep the
/// powers `p^e` cheap; a degenerate draw only delays stabilization.
const COMBINATION_BOUND: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSampling {
    pub samples_per_flat: usize,
    pub seed: u64,
    /// Number of consecutive rounds that must agree.
    pub window: usize,
    pub max_rounds: usize,
}

impl Default for IdealSampling {
    fn default() -> Self {
        IdealSampling {
            samples_per_flat: 4,
            seed: 0,
            window: 2,
            max_rounds: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCertificate {
    pub hilbert: UniPoly,
    pub rounds: usize,
    /// Samples per flat in the final round (cumulative).
    pub samples_per_flat: usize,
    pub flats_used: usize,
    pub round_vectors: Vec<Vec<u64>>,
}

pub fn hilbert_via_ideal(rep: &RepMatrix, samples_per_flat: usize, seed: u64) -> Result<UniPoly> {
    let cfg = IdealSampling {
        samples_per_flat,
        seed,
        ..IdealSampling::default()
    };
    Ok(hilbert_via_ideal_detailed(rep, &cfg)?.hilbert)
}

/// Homogeneous polynomial in `R`, keyed by packed exponent vectors.
type RPoly = BTreeMap<u64, Rational>;

fn mul_linear(p: &RPoly, form: &[Rational]) -> RPoly {
    let mut out = RPoly::new();
    for (&key, c) in p {
        for (i, a) in form.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = key + (1u64 << (EXP_BITS * i as u32));
            let e = out.entry(k).or_insert_with(Rational::zero);
            *e += c * a;
            if e.is_zero() {
                out.remove(&k);
            }
        }
    }
    out
}

fn linear_power(form: &[Rational], e: usize) -> RPoly {
    let mut p = RPoly::new();
    p.insert(0, rat(1));
    for _ in 0..e {
        p = mul_linear(&p, form);
    }
    p
}

fn to_sparse(p: &RPoly) -> SparseVec {
    p.iter().map(|(&k, c)| (k as usize, c.clone())).collect()
}

fn dim_r(d: usize, j: usize) -> u64 {
    // C(d + j - 1, j), with R_0 = k even when d = 0
    if d == 0 {
        return u64::from(j == 0);
    }
    let n = (d + j - 1) as u64;
    let k = j.min(d - 1) as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

struct FlatSampler {
    /// Flats of rank < d whose generators land in degrees <= m.
    annihilators: Vec<Vec<Vec<Rational>>>,
    /// Generators collected so far: degree -> polynomials.
    generators: BTreeMap<usize, Vec<RPoly>>,
    per_flat: usize,
}

impl FlatSampler {
    fn new(rep: &RepMatrix) -> Result<Self> {
        let table = RankTable::new(rep)?;
        let d = rep.d();
        let annihilators = table
            .flats()
            .into_iter()
            .filter(|&f| !f.is_empty() && table.rank(f) < d)
            .map(|f| annihilator(rep, f))
            .collect();
        Ok(FlatSampler {
            annihilators,
            generators: BTreeMap::new(),
            per_flat: 0,
        })
    }

    fn top_up(&mut self, rep: &RepMatrix, target: usize, rng: &mut impl Rng) -> Result<()> {
        let m = rep.m();
        let extra = target.saturating_sub(self.per_flat);
        for basis in &self.annihilators {
            for _ in 0..extra {
                let p = random_combination(basis, rng);
                let pm = RatMatrix::new(1, p.len(), p.clone())?.mul(rep.matrix())?;
                let nu = pm.row(0).iter().filter(|x| !x.is_zero()).count();
                let e = nu + 1;
                if e <= m {
                    self.generators.entry(e).or_default().push(linear_power(&p, e));
                }
            }
        }
        self.per_flat = self.per_flat.max(target);
        Ok(())
    }

    fn quotient_dims(&self, d: usize, m: usize) -> Vec<u64> {
        let mut dims = Vec::with_capacity(m + 1);
        let mut prev = SparseEchelon::new();
        for j in 0..=m {
            let full = dim_r(d, j) as usize;
            let mut cur = SparseEchelon::new();
            'span: {
                for row in prev.reduced_basis() {
                    for i in 0..d {
                        let shift = 1usize << (EXP_BITS * i as u32);
                        cur.insert(row.iter().map(|(&k, c)| (k + shift, c.clone())).collect());
                        if cur.dim() == full {
                            break 'span;
                        }
                    }
                }
                for g in self.generators.get(&j).into_iter().flatten() {
                    cur.insert(to_sparse(g));
                    if cur.dim() == full {
                        break 'span;
                    }
                }
            }
            dims.push((full - cur.dim()) as u64);
            if cur.dim() == full {
                // J contains R_j, hence every later degree
                dims.resize(m + 1, 0);
                break;
            }
            prev = cur;
        }
        dims
    }
}

/// Basis of `{ p : p . column = 0 for every column in F }`, each vector
/// scaled to coprime integers.
fn annihilator(rep: &RepMatrix, flat: ColumnSubset) -> Vec<Vec<Rational>> {
    let cols = rep.matrix().select_columns(&flat.to_vec());
    cols.transpose()
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
        })
        .collect()
}

fn random_combination(basis: &[Vec<Rational>], rng: &mut impl Rng) -> Vec<Rational> {
    let len = basis[0].len();
    let mut p = vec![Rational::zero(); len];
    for b in basis {
        let mut c = rng.gen_range(1..=COMBINATION_BOUND);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        let c = rat(c);
        for (x, y) in p.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    p
}

/// Sample, double the sample count, and stop once `window` consecutive
/// rounds produce the same dimension vector.
pub fn hilbert_via_ideal_detailed(rep: &RepMatrix, cfg: &IdealSampling) -> Result<IdealCertificate> {
    let d = rep.d();
    let m = rep.m();
    if d > MAX_VARS {
        return Err(MalError::InvalidArgument(format!(
            "ideal route supports d <= {MAX_VARS}, got {d}"
        )));
    }
    if cfg.samples_per_flat == 0 || cfg.window == 0 {
        return Err(MalError::InvalidArgument(
            "samples_per_flat and window must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut sampler = FlatSampler::new(rep)?;
    let mut rounds: Vec<Vec<u64>> = Vec::new();
    let mut target = cfg.samples_per_flat;
    for _ in 0..cfg.max_rounds {
        sampler.top_up(rep, target, &mut rng)?;
        rounds.push(sampler.quotient_dims(d, m));
        if rounds.len() >= cfg.window {
            let tail = &rounds[rounds.len() - cfg.window..];
            if tail.iter().all(|v| *v == tail[0]) {
                return Ok(IdealCertificate {
                    hilbert: UniPoly::new(tail[0].clone()),
                    rounds: rounds.len(),
                    samples_per_flat: sampler.per_flat,
                    flats_used: sampler.annihilators.len(),
                    round_vectors: rounds,
                });
            }
        }
        target *= 2;
    }
    Err(MalError::NotStabilized {
        rounds: cfg.max_rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_parallel_example() {
        let rep = RepMatrix::from_i64(&[&[1, 0, 1, 1], &[0, 1, 1, 1]]).unwrap();
        assert_eq!(hilbert_via_ideal(&rep, 4, 1).unwrap().coeffs(), &[1, 2, 3, 3, 1]);
    }

    #[test]
    fn u32_example() {
        let rep = RepMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(hilbert_via_ideal(&rep, 4, 7).unwrap().coeffs(), &[1, 2, 3, 1]);
    }

    #[test]
    fn univariate() {
        let rep = RepMatrix::from_i64(&[&[1, 1, 1]]).unwrap();
        let cert = hilbert_via_ideal_detailed(&rep, &IdealSampling::default()).unwrap();
        assert_eq!(cert.hilbert.coeffs(), &[1, 1, 1, 1]);
        assert_eq!(cert.flats_used, 0);
    }

    #[test]
    fn dim_r_values() {
        assert_eq!(dim_r(2, 3), 4);
        assert_eq!(dim_r(3, 2), 6);
        assert_eq!(dim_r(4, 9), 220);
        assert_eq!(dim_r(1, 5), 1);
        assert_eq!(dim_r(0, 0), 1);
        assert_eq!(dim_r(0, 2), 0);
    }

    #[test]
    fn rejects_zero_samples() {
        let rep = RepMatrix::from_i64(&[&[1, 1]]).unwrap();
        let cfg = IdealSampling {
            samples_per_flat: 0,
            ..IdealSampling::default()
        };
        assert!(hilbert_via_ideal_detailed(&rep, &cfg).is_err());
    }
}
