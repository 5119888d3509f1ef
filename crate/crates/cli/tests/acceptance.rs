//! Acceptance criteria, one line per criterion. Each criterion lists the
//! verify checks it is made of, the tolerances those checks must carry and a
//! wall-clock limit.

use std::process::Command;
use std::time::{Duration, Instant};

use besselpoly::verify::run_check;
use besselpoly::{Check, Status, VerifyOptions};

/// Relative tolerance of the quadrature moments.
const MOMENT_REL_TOL: f64 = 1e-8;
/// Relative tolerance of the tau-integral representation and the eigen-residual.
const REPRESENTATION_REL_TOL: f64 = 1e-5;
const EIGEN_TOL: f64 = 1e-5;
/// Spread of the fitted Euler-integral constant and residual of the corrected identity.
const EULER_FIT_TOL: f64 = 1e-6;
const FULL_RUN_LIMIT: Duration = Duration::from_secs(300);

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    /// Check id and the tolerance it must carry (`None` for exact checks).
    checks: &'static [(&'static str, Option<f64>)],
    /// Report-only checks that must be present with that status.
    reports: &'static [&'static str],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "construction equivalence",
        limit: Duration::from_secs(30),
        checks: &[("bessel.construction_symbolic", None), ("bessel.construction_fixed", None)],
        reports: &[],
    },
    Criterion {
        id: 2,
        name: "polynomial listing p_1..p_3",
        limit: Duration::from_secs(1),
        checks: &[("bessel.listing", None)],
        reports: &[],
    },
    Criterion {
        id: 3,
        name: "structural identities",
        limit: Duration::from_secs(30),
        checks: &[
            ("bessel.value_at_zero", None),
            ("bessel.leading_coefficient", None),
            ("bessel.shift_identity", None),
            ("bessel.diff_relation", None),
            ("bessel.raise_power", None),
        ],
        reports: &[],
    },
    Criterion {
        id: 4,
        name: "recurrence coefficients",
        limit: Duration::from_secs(60),
        checks: &[("moments.recurrence_closed_forms", None)],
        reports: &[],
    },
    Criterion {
        id: 5,
        name: "orthogonality and regularity",
        limit: Duration::from_secs(60),
        checks: &[
            ("moments.orthogonality_symbolic", None),
            ("moments.hankel_positive", None),
            ("moments.hankel_cross_identity", None),
        ],
        reports: &[],
    },
    Criterion {
        id: 6,
        name: "non-orthogonality of P",
        limit: Duration::from_secs(5),
        checks: &[("moments.non_orthogonality", None)],
        reports: &[],
    },
    Criterion {
        id: 7,
        name: "weight moments",
        limit: Duration::from_secs(60),
        checks: &[("numeric.weight_moments", Some(MOMENT_REL_TOL))],
        reports: &[],
    },
    Criterion {
        id: 8,
        name: "Euler layer",
        limit: Duration::from_secs(30),
        checks: &[("euler.diagonal_table", None), ("euler.odd_diagonal", None), ("euler.generating_function", None)],
        reports: &[],
    },
    Criterion {
        id: 9,
        name: "Bernoulli integral identity",
        limit: Duration::from_secs(5),
        checks: &[("euler.bernoulli_integral", None)],
        reports: &[],
    },
    Criterion {
        id: 10,
        name: "integral representation",
        limit: Duration::from_secs(120),
        checks: &[
            ("numeric.pn_representation", Some(REPRESENTATION_REL_TOL)),
            ("numeric.k_itau_eigen", Some(EIGEN_TOL)),
        ],
        reports: &[],
    },
    Criterion {
        id: 11,
        name: "discrepancy resolution",
        limit: Duration::from_secs(60),
        checks: &[
            ("euler.connection_exact", None),
            ("numeric.euler_integral_corrected", Some(EULER_FIT_TOL)),
            ("moments.sign_consistent", None),
        ],
        reports: &["euler.connection_stated", "numeric.euler_integral_stated", "moments.sign_probe"],
    },
];

fn judge(check: &Check, tolerance: Option<f64>) -> Result<(), String> {
    if check.status != Status::Pass {
        return Err(format!("{} is {:?}: {} vs {}", check.id, check.status, check.lhs, check.rhs));
    }
    if check.tolerance != tolerance {
        return Err(format!("{} carries tolerance {:?}, pinned {:?}", check.id, check.tolerance, tolerance));
    }
    Ok(())
}

fn evaluate(c: &Criterion, opts: &VerifyOptions) -> Result<Duration, String> {
    let start = Instant::now();
    for (id, tol) in c.checks {
        let check = run_check(id, opts).map_err(|e| e.to_string())?;
        judge(&check, *tol)?;
    }
    for id in c.reports {
        let check = run_check(id, opts).map_err(|e| e.to_string())?;
        if check.status != Status::ReportOnly {
            return Err(format!("{id} should be report-only, got {:?}", check.status));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > c.limit {
        return Err(format!("took {:.2?}, limit {:.2?}", elapsed, c.limit));
    }
    Ok(elapsed)
}

fn full_run() -> Result<Duration, String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_besselpoly"))
        .args(["verify", "--suite", "all", "--rel-tol", "1e-8"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let checks = report["checks"].as_array().ok_or("report without checks")?;
    if checks.iter().any(|c| c["status"] == "fail") {
        return Err("a check failed with exit status 0".into());
    }
    if elapsed > FULL_RUN_LIMIT {
        return Err(format!("took {:.2?}, limit {:.2?}", elapsed, FULL_RUN_LIMIT));
    }
    Ok(elapsed)
}

#[test]
fn acceptance_criteria() {
    let opts = VerifyOptions { rel_tol: MOMENT_REL_TOL, ..VerifyOptions::default() };
    let mut failed = Vec::new();
    let mut line = |id: u32, name: &str, result: Result<Duration, String>| match result {
        Ok(t) => println!("AC{id:<2} PASS  {name} ({:.2} s)", t.as_secs_f64()),
        Err(e) => {
            println!("AC{id:<2} FAIL  {name}: {e}");
            failed.push(id);
        }
    };
    for c in CRITERIA {
        line(c.id, c.name, evaluate(c, &opts));
    }
    line(12, "verify --suite all exits 0 within 5 minutes", full_run());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
