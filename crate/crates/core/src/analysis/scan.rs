//! Batch scan of random representations for log-concavity of the Hilbert
//! function.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::numerics::{concave_differences_check, growth_check, log_concavity_check, macaulay_check};
use super::random::{random_rep, UniformityMode, DEFAULT_ENTRY_BOUND};
use crate::algebra::{hilbert_d2_closed_form, hilbert_direct};
use crate::error::{MalError, Result};
use crate::format::{matrix_digest, matrix_to_strings};
use crate::matroid::RepMatrix;
use crate::tutte::poincare_delcon;

/// Environment variable bounding the worker pool.
pub const THREADS_ENV: &str = "MAL_THREADS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanProfile {
    pub d: Vec<usize>,
    pub m_min: usize,
    pub m_max: usize,
    pub entry_bound: i64,
}

impl Default for ScanProfile {
    fn default() -> Self {
        ScanProfile {
            d: vec![2, 3],
            m_min: 4,
            m_max: 8,
            entry_bound: DEFAULT_ENTRY_BOUND,
        }
    }
}

impl ScanProfile {
    fn validate(&self) -> Result<()> {
        if self.d.is_empty() || self.d.contains(&0) {
            return Err(MalError::InvalidArgument("profile needs a nonempty list of positive d".into()));
        }
        if self.m_min > self.m_max {
            return Err(MalError::InvalidArgument(format!(
                "empty m range {}..{}",
                self.m_min, self.m_max
            )));
        }
        if let Some(&d) = self.d.iter().find(|&&d| d > self.m_max) {
            return Err(MalError::InvalidArgument(format!(
                "d = {d} exceeds the largest m = {}",
                self.m_max
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanInstance {
    pub index: u64,
    pub d: usize,
    pub m: usize,
    pub matrix_hash: String,
    pub hilbert: Vec<u64>,
    pub uniform: bool,
    pub log_concave: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanViolation {
    pub index: u64,
    pub kind: String,
    pub detail: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub seed: u64,
    pub count: u64,
    pub profile: ScanProfile,
    pub instances: Vec<ScanInstance>,
    pub violations: Vec<ScanViolation>,
    /// Wall-clock time; left unset by the scan itself so reports stay
    /// reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,d,m,hilbert,uniform,log_concave\n");
        for inst in &self.instances {
            let h: Vec<String> = inst.hilbert.iter().map(u64::to_string).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                inst.index,
                inst.d,
                inst.m,
                h.join(" "),
                inst.uniform,
                inst.log_concave
            ));
        }
        out
    }
}

/// Instance `index` draws from a generator seeded with `seed ^ index`.
pub fn scan_instance_rep(profile: &ScanProfile, seed: u64, index: u64) -> Result<RepMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index);
    let d = profile.d[rng.gen_range(0..profile.d.len())];
    let m = rng.gen_range(profile.m_min.max(d)..=profile.m_max);
    random_rep(d, m, rng.gen(), profile.entry_bound, UniformityMode::Any)
}

fn run_instance(profile: &ScanProfile, seed: u64, index: u64) -> Result<(ScanInstance, Option<ScanViolation>)> {
    let rep = scan_instance_rep(profile, seed, index)?;
    let diag = |what: &str| {
        format!(
            "instance {index}: {what}; matrix {:?}",
            matrix_to_strings(rep.matrix())
        )
    };
    let h = hilbert_direct(&rep);
    let p = poincare_delcon(&rep);
    if h != p {
        return Err(MalError::OracleMismatch(diag(&format!(
            "direct {:?} vs deletion/contraction {:?}",
            h.coeffs(),
            p.coeffs()
        ))));
    }
    let hv = h.padded(rep.m());
    if let Some(v) = macaulay_check(&hv, rep.d() as u64).first() {
        return Err(MalError::TheoremViolation(diag(&format!("Macaulay bound: {}", v.detail))));
    }
    if let Some(v) = growth_check(&hv).first() {
        return Err(MalError::TheoremViolation(diag(&format!("growth inequality: {}", v.detail))));
    }
    if rep.d() == 2 {
        let closed = hilbert_d2_closed_form(&rep)?;
        if closed != h {
            return Err(MalError::OracleMismatch(diag(&format!(
                "rank-2 closed form {:?} vs direct {:?}",
                closed.coeffs(),
                h.coeffs()
            ))));
        }
        if let Some(v) = concave_differences_check(&hv).first() {
            return Err(MalError::TheoremViolation(diag(&format!("rank-2 differences: {}", v.detail))));
        }
    }
    let lc = log_concavity_check(&hv);
    let violation = lc.first().map(|v| ScanViolation {
        index,
        kind: "log-concavity".into(),
        detail: v.detail.clone(),
        matrix: matrix_to_strings(rep.matrix()),
    });
    let inst = ScanInstance {
        index,
        d: rep.d(),
        m: rep.m(),
        matrix_hash: matrix_digest(rep.matrix()),
        hilbert: hv,
        uniform: rep.is_uniform(),
        log_concave: lc.pass,
    };
    Ok((inst, violation))
}

/// Thread count from `MAL_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

pub fn scan_log_concavity(count: u64, profile: &ScanProfile, seed: u64) -> Result<ScanReport> {
    scan_log_concavity_with_threads(count, profile, seed, threads_from_env())
}

/// Runs on a dedicated pool of `threads` workers, or rayon's default when
/// `None`. The report does not depend on the thread count.
pub fn scan_log_concavity_with_threads(
    count: u64,
    profile: &ScanProfile,
    seed: u64,
    threads: Option<usize>,
) -> Result<ScanReport> {
    profile.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| MalError::InvalidArgument(format!("cannot build worker pool: {e}")))?;
    let results: Vec<(ScanInstance, Option<ScanViolation>)> = pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| run_instance(profile, seed, i))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut instances = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    for (inst, v) in results {
        instances.push(inst);
        violations.extend(v);
    }
    Ok(ScanReport {
        seed,
        count,
        profile: profile.clone(),
        instances,
        violations,
        timing_ms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_scan() {
        let r = scan_log_concavity_with_threads(0, &ScanProfile::default(), 5, Some(1)).unwrap();
        assert!(r.instances.is_empty() && r.violations.is_empty());
        assert_eq!(r.to_csv().lines().count(), 1);
    }

    #[test]
    fn thread_count_independent() {
        let p = ScanProfile::default();
        let a = scan_log_concavity_with_threads(12, &p, 42, Some(1)).unwrap();
        let b = scan_log_concavity_with_threads(12, &p, 42, Some(3)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.instances.iter().enumerate().all(|(i, x)| x.index == i as u64));
        assert!(a.instances.iter().all(|x| p.d.contains(&x.d) && (4..=8).contains(&x.m)));
    }

    #[test]
    fn bad_profiles() {
        let p = ScanProfile {
            d: vec![9],
            ..ScanProfile::default()
        };
        assert!(scan_log_concavity_with_threads(1, &p, 0, Some(1)).is_err());
        let p = ScanProfile {
            m_min: 9,
            m_max: 4,
            ..ScanProfile::default()
        };
        assert!(scan_log_concavity_with_threads(1, &p, 0, Some(1)).is_err());
    }
}
