use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use mal_core::algebra::{
    build_graded_basis, hilbert_d2_closed_form, hilbert_direct, hilbert_via_ideal_detailed, lefschetz_injective_in,
    IdealSampling,
};
use mal_core::analysis::{
    concave_differences_check, growth_check, log_concavity_check, macaulay_check, scan_log_concavity_with_threads,
    sl2_degeneration, threads_from_env, uniform_hilbert, ScanProfile,
};
use mal_core::equiv::decide_equivalence;
use mal_core::format::{format_rational, matrix_to_strings};
use mal_core::matroid::RankOracle;
use mal_core::tutte::{hilbert_via_activity, poincare_delcon, poincare_from_tutte, specialize_tutte, tutte_rank_expansion};
use mal_core::{RepMatrix, UniPoly};
use serde_json::{json, Value};

use crate::report::{load_matrix, write_atomic, CliError, EXIT_INTERNAL, EXIT_NEGATIVE, EXIT_OK};

/// Direct-algebra commands refuse larger inputs without `--force`.
pub const DIRECT_M_CAP: usize = 14;
/// Subset enumeration is `2^m`; never lifted.
pub const RANK_EXPANSION_M_CAP: usize = 20;

pub struct Outcome {
    pub digests: Vec<String>,
    pub result: Value,
    pub pretty: String,
    pub code: i32,
}

fn check_direct_cap(rep: &RepMatrix, force: bool) -> Result<(), CliError> {
    if rep.m() > DIRECT_M_CAP && !force {
        return Err(CliError::usage(format!(
            "m = {} exceeds the default cap of {DIRECT_M_CAP} for direct algebra; pass --force to run anyway",
            rep.m()
        )));
    }
    Ok(())
}

fn check_expansion_cap(rep: &RepMatrix) -> Result<(), CliError> {
    if rep.m() > RANK_EXPANSION_M_CAP {
        return Err(CliError::usage(format!(
            "m = {} exceeds the cap of {RANK_EXPANSION_M_CAP} for subset enumeration",
            rep.m()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Direct,
    Delcon,
    Tutte,
    Activity,
    Ideal,
    All,
}

pub fn hilbert(file: &str, method: Method, samples: usize, seed: u64, force: bool) -> Result<Outcome, CliError> {
    let input = load_matrix(file)?;
    let rep = &input.rep;
    let wants = |m: Method| method == m || method == Method::All;
    if wants(Method::Direct) || wants(Method::Ideal) {
        check_direct_cap(rep, force)?;
    }
    if wants(Method::Tutte) || wants(Method::Activity) {
        check_expansion_cap(rep)?;
    }
    let mut routes: BTreeMap<&str, UniPoly> = BTreeMap::new();
    let mut extra = serde_json::Map::new();
    if wants(Method::Direct) {
        routes.insert("direct", hilbert_direct(rep));
    }
    if wants(Method::Delcon) {
        routes.insert("delcon", poincare_delcon(rep));
    }
    if wants(Method::Tutte) {
        routes.insert("tutte", poincare_from_tutte(rep)?);
    }
    if wants(Method::Activity) {
        routes.insert("activity", hilbert_via_activity(rep)?);
    }
    if wants(Method::Ideal) {
        let cfg = IdealSampling {
            samples_per_flat: samples,
            seed,
            ..IdealSampling::default()
        };
        let cert = hilbert_via_ideal_detailed(rep, &cfg)?;
        extra.insert(
            "ideal_certificate".into(),
            json!({
                "rounds": cert.rounds,
                "samples_per_flat": cert.samples_per_flat,
                "flats_used": cert.flats_used,
                "round_vectors": cert.round_vectors,
            }),
        );
        routes.insert("ideal", cert.hilbert);
    }
    let first = routes.values().next().cloned().unwrap_or_else(UniPoly::one);
    let agree = routes.values().all(|p| *p == first);
    let mut pretty = String::new();
    for (name, p) in &routes {
        let _ = writeln!(pretty, "{name:>8}: {p}");
    }
    if !agree {
        let _ = writeln!(pretty, "routes disagree");
    }
    let mut result = json!({
        "d": rep.d(),
        "m": rep.m(),
        "stripped_zero_columns": rep.stripped_zero_columns(),
        "hilbert": routes.iter().map(|(k, v)| (k.to_string(), json!(v.coeffs()))).collect::<serde_json::Map<_, _>>(),
        "agree": agree,
    });
    result.as_object_mut().expect("object").extend(extra);
    Ok(Outcome {
        digests: vec![input.digest],
        result,
        pretty,
        code: if agree { EXIT_OK } else { EXIT_INTERNAL },
    })
}

pub fn tutte(file: &str) -> Result<Outcome, CliError> {
    let input = load_matrix(file)?;
    let rep = &input.rep;
    check_expansion_cap(rep)?;
    let t = tutte_rank_expansion(rep)?;
    let p = specialize_tutte(&t, rep.m(), rep.d())?;
    let delcon = poincare_delcon(rep);
    let agree = p == delcon;
    let terms: Vec<[i64; 3]> = t.terms().map(|((i, j), c)| [i as i64, j as i64, c]).collect();
    let pretty = format!(
        "T(x, y) = {t}\nP(t)    = {p}\n{}",
        if agree { "" } else { "specialization disagrees with deletion/contraction\n" }
    );
    Ok(Outcome {
        digests: vec![input.digest],
        result: json!({
            "d": rep.d(),
            "m": rep.m(),
            "tutte_terms": terms,
            "tutte_grid": t.to_grid(),
            "poincare": p.coeffs(),
            "poincare_delcon": delcon.coeffs(),
            "agree": agree,
        }),
        pretty,
        code: if agree { EXIT_OK } else { EXIT_INTERNAL },
    })
}

pub fn equiv(a: &str, b: &str) -> Result<Outcome, CliError> {
    let (ia, ib) = (load_matrix(a)?, load_matrix(b)?);
    let out = decide_equivalence(&ia.rep, &ib.rep);
    let mut pretty = format!("verdict: {:?}\n", out.verdict);
    let witness = match &out.witness {
        Some(w) => {
            if !w.verify(&ia.rep, &ib.rep) {
                return Err(CliError {
                    code: EXIT_INTERNAL,
                    msg: "witness failed verification".into(),
                });
            }
            let _ = writeln!(pretty, "Q = {:?}\nperm = {:?}", matrix_to_strings(&w.q), w.perm);
            json!({
                "q": matrix_to_strings(&w.q),
                "p": matrix_to_strings(&w.monomial_matrix()),
                "perm": w.perm,
                "scales": w.scales.iter().map(format_rational).collect::<Vec<_>>(),
            })
        }
        None => Value::Null,
    };
    Ok(Outcome {
        digests: vec![ia.digest, ib.digest],
        result: json!({
            "verdict": out.verdict,
            "equivalent": out.equivalent(),
            "witness": witness,
        }),
        pretty,
        code: if out.equivalent() { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

struct Battery {
    checks: Vec<Value>,
    pretty: String,
    theorem_failed: bool,
    violation: bool,
}

impl Battery {
    fn record(&mut self, name: &str, pass: bool, detail: Value, theorem: bool) {
        let _ = writeln!(self.pretty, "[{}] {name}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            if theorem {
                self.theorem_failed = true;
            } else {
                self.violation = true;
            }
        }
        self.checks.push(json!({ "name": name, "pass": pass, "detail": detail }));
    }
}

pub fn check(file: &str, force: bool) -> Result<Outcome, CliError> {
    let input = load_matrix(file)?;
    let rep = &input.rep;
    check_direct_cap(rep, force)?;
    check_expansion_cap(rep)?;
    let (d, m) = (rep.d(), rep.m());
    let mut b = Battery {
        checks: Vec::new(),
        pretty: String::new(),
        theorem_failed: false,
        violation: false,
    };

    let h = hilbert_direct(rep);
    let mut routes = vec![
        ("direct", h.clone()),
        ("delcon", poincare_delcon(rep)),
        ("tutte", poincare_from_tutte(rep)?),
        ("activity", hilbert_via_activity(rep)?),
    ];
    if d <= 8 {
        routes.push(("ideal", hilbert_via_ideal_detailed(rep, &IdealSampling::default())?.hilbert));
    }
    let agree = routes.iter().all(|(_, p)| *p == h);
    let detail: serde_json::Map<String, Value> = routes.iter().map(|(k, p)| (k.to_string(), json!(p.coeffs()))).collect();
    b.record("cross-oracle Hilbert function", agree, Value::Object(detail), true);

    let mut rec = Vec::new();
    let mut rec_ok = true;
    for j in 0..m {
        if rep.is_coloop(j) {
            rec.push(json!({ "column": j, "skipped": "coloop" }));
            continue;
        }
        let lhs = poincare_delcon(rep);
        let del = hilbert_direct(&rep.delete(j)?);
        let con = hilbert_direct(&rep.contract(j)?);
        let rhs = del.shift(1).add(&con);
        rec_ok &= lhs == rhs;
        rec.push(json!({ "column": j, "holds": lhs == rhs }));
    }
    b.record("deletion/contraction identity", rec_ok, json!(rec), true);

    let hv = h.padded(m);
    let mac = macaulay_check(&hv, d as u64);
    b.record("Macaulay bounds", mac.pass, json!(mac.violations), true);
    let growth = growth_check(&hv);
    b.record("growth inequalities", growth.pass, json!(growth.violations), true);

    let family = build_graded_basis(rep);
    let mut lef = Vec::new();
    let mut lef_ok = true;
    for j in 0..=m / 2 {
        let cert = lefschetz_injective_in(rep, &family, j, None)?;
        lef_ok &= cert.injective;
        lef.push(json!({ "degree": j, "injective": cert.injective, "rank": cert.image_rank, "source_dim": cert.source_dim }));
    }
    b.record("Lefschetz injectivity", lef_ok, json!(lef), true);

    let lc = log_concavity_check(&hv);
    b.record("log-concavity", lc.pass, json!(lc.violations), false);

    let uniform = rep.is_uniform();
    let by_minors = rep.is_uniform_by_minors();
    let formula = uniform_hilbert(d, m)?;
    let below = (0..=m).any(|j| hv[j] < formula.coeff(j));
    let minor = rep.vanishing_minor();
    let consistent = uniform == by_minors
        && if uniform { h == formula } else { below && minor.is_some() };
    b.record(
        "uniform matroid consistency",
        consistent,
        json!({
            "uniform": uniform,
            "uniform_by_minors": by_minors,
            "formula": formula.coeffs(),
            "vanishing_minor": minor,
        }),
        true,
    );

    if d == 2 {
        let closed = hilbert_d2_closed_form(rep)?;
        let diffs = concave_differences_check(&hv);
        b.record(
            "rank-2 closed form and concave differences",
            closed == h && diffs.pass,
            json!({ "closed_form": closed.coeffs(), "differences": diffs.violations }),
            true,
        );
    }

    let code = if b.theorem_failed {
        EXIT_INTERNAL
    } else if b.violation {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    };
    let _ = writeln!(b.pretty, "Hilbert function: {h}");
    Ok(Outcome {
        digests: vec![input.digest],
        result: json!({
            "d": d,
            "m": m,
            "hilbert": h.coeffs(),
            "checks": b.checks,
            "all_pass": code == EXIT_OK,
        }),
        pretty: b.pretty,
        code,
    })
}

/// `"6"`, `"4..8"` or `"4..=8"`, inclusive.
pub fn parse_m_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid m range {s:?}"));
    match s.split_once("..") {
        None => {
            let v = num(s)?;
            Ok((v, v))
        }
        Some((a, b)) => Ok((num(a)?, num(b.strip_prefix('=').unwrap_or(b))?)),
    }
}

pub struct ScanArgs {
    pub count: u64,
    pub d: Vec<usize>,
    pub m: (usize, usize),
    pub seed: u64,
    pub entry_bound: i64,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub threads: Option<usize>,
}

pub fn scan(args: &ScanArgs) -> Result<Outcome, CliError> {
    let profile = ScanProfile {
        d: args.d.clone(),
        m_min: args.m.0,
        m_max: args.m.1,
        entry_bound: args.entry_bound,
    };
    let threads = args.threads.or_else(threads_from_env);
    let report = scan_log_concavity_with_threads(args.count, &profile, args.seed, threads)?;
    let json_text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    if let Some(path) = &args.out {
        write_atomic(path, &json_text)?;
    }
    if let Some(path) = &args.csv {
        write_atomic(path, &report.to_csv())?;
    }
    let pretty = format!(
        "{} instances, {} log-concavity violations\n",
        report.instances.len(),
        report.violations.len()
    );
    let result = if args.out.is_some() {
        json!({
            "instances": report.instances.len(),
            "violations": report.violations,
            "out": args.out,
            "csv": args.csv,
        })
    } else {
        serde_json::to_value(&report).expect("serializable")
    };
    Ok(Outcome {
        digests: Vec::new(),
        result,
        pretty,
        code: EXIT_OK,
    })
}

pub fn sl2(n: usize, r: usize) -> Result<Outcome, CliError> {
    let (deg, report) = sl2_degeneration(n, r)?;
    let mut pretty = String::new();
    for (name, mat) in [("X", &deg.x), ("Y", &deg.y), ("H", &deg.h)] {
        let _ = writeln!(pretty, "{name}:");
        for row in mat.to_strings() {
            let _ = writeln!(pretty, "  [{}]", row.join(", "));
        }
    }
    let _ = writeln!(
        pretty,
        "global relations: {}\nrestriction to coordinates {}..{}: {}",
        report.h_standard && report.hx_relation && report.hy_relation && report.specializations_hold,
        report.window.0,
        report.window.1,
        report.restriction_holds()
    );
    Ok(Outcome {
        digests: Vec::new(),
        result: json!({
            "x": deg.x,
            "y": deg.y,
            "h": deg.h,
            "report": report,
            "all_hold": report.all_hold(),
        }),
        pretty,
        code: if report.all_hold() { EXIT_OK } else { EXIT_NEGATIVE },
    })
}
