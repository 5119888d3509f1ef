use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use besselpoly::bessel_poly::{monic_p, pn_polys};
use besselpoly::combinatorics::StirlingTable;
use besselpoly::euler::gen_euler_poly;
use besselpoly::moments::{moments, stieltjes_fraction_free, stieltjes_orthogonalize, stieltjes_symbolic};
use besselpoly::numeric::{bessel_k_itau, euler_integral_probe, QuadratureConfig};
use besselpoly::verify::run_suite;
use besselpoly::{AlphaMode, Error, Field, Polynomial, Rational, RationalFunction, Status, Suite, VerifyOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

/// Largest index accepted for symbolic alpha where Stieltjes runs (Q, moments, recur).
const SYMBOLIC_CAP: usize = 8;
/// Largest symbolic index for the closed-form bases p, P and euler.
const SYMBOLIC_POLY_CAP: usize = 12;
const FIXED_CAP: usize = 20;

#[derive(Parser)]
#[command(name = "besselpoly", version, about = "Exact tables and verification for Bessel-operator polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Basis {
    Bessel,
    Monic,
    Orthogonal,
    Euler,
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "p" => Ok(Basis::Bessel),
            "P" => Ok(Basis::Monic),
            "Q" => Ok(Basis::Orthogonal),
            "euler" => Ok(Basis::Euler),
            _ => Err(format!("unknown basis {s:?}; expected p, P, Q or euler")),
        }
    }
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::Bessel => "p",
            Basis::Monic => "P",
            Basis::Orthogonal => "Q",
            Basis::Euler => "euler",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StirlingKindArg {
    Second,
    Modified,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of p_n, monic P_n, orthogonal Q_n or the Euler polynomial, ascending degree.
    Poly {
        #[arg(long)]
        n: usize,
        /// A rational p/q or "symbolic".
        #[arg(long, default_value = "symbolic")]
        alpha: String,
        /// One of p, P, Q, euler.
        #[arg(long, default_value = "p")]
        basis: Basis,
    },
    /// Moments (u)_0..(u)_N.
    Moments {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "symbolic")]
        alpha: String,
    },
    /// Recurrence coefficients beta_0..beta_N and gamma_1..gamma_N.
    Recur {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "symbolic")]
        alpha: String,
    },
    /// Euler-integral probe for n = 0..=N: quadrature, exact value, fitted and stated constants.
    Euler {
        #[arg(long)]
        n: usize,
        /// A positive rational p/q.
        #[arg(long)]
        alpha: String,
    },
    /// Table of K_{i tau}(x) over a grid.
    Kl {
        /// Comma-separated tau values.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,5,10")]
        tau: Vec<f64>,
        /// Comma-separated positive x values.
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,5")]
        x: Vec<f64>,
        #[arg(long, default_value_t = 1e-15)]
        abs_tol: f64,
    },
    /// Stirling-type tables, rows 0..=N.
    Stirling {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = StirlingKindArg::Second)]
        kind: StirlingKindArg,
    },
    /// Run a verification suite; exit status 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Tolerance of the quadrature-moment check.
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
        /// Absolute tolerance of every quadrature.
        #[arg(long, default_value_t = 1e-15)]
        abs_tol: f64,
        /// Seed for the randomized property checks.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidArgument(_)
            | Error::DegreeGuard { .. }
            | Error::PochhammerPole { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Rendered output plus whether the run counts as passing.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Failed(_) => 1,
            })
        }
    }
}

fn run(cli: &Cli) -> CliResult<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Poly { n, alpha, basis } => cmd_poly(*n, &parse_alpha(alpha)?, *basis, format).map(Output::ok),
        Command::Moments { n, alpha } => cmd_moments(*n, &parse_alpha(alpha)?, format).map(Output::ok),
        Command::Recur { n, alpha } => cmd_recur(*n, &parse_alpha(alpha)?, format).map(Output::ok),
        Command::Euler { n, alpha } => cmd_euler(*n, alpha, format).map(Output::ok),
        Command::Kl { tau, x, abs_tol } => cmd_kl(tau, x, *abs_tol, format).map(Output::ok),
        Command::Stirling { n, kind } => cmd_stirling(*n, *kind, format).map(Output::ok),
        Command::Verify { suite, rel_tol, abs_tol, seed } => {
            let opts = VerifyOptions { rel_tol: *rel_tol, abs_tol: *abs_tol, seed: *seed };
            cmd_verify(suite, &opts, format)
        }
    }
}

fn parse_alpha(s: &str) -> CliResult<AlphaMode> {
    Ok(s.parse::<AlphaMode>()?)
}

fn check_cap(n: usize, alpha: &AlphaMode, symbolic_cap: usize) -> CliResult<()> {
    let cap = match alpha {
        AlphaMode::Symbolic => symbolic_cap,
        AlphaMode::Fixed(_) => FIXED_CAP,
    };
    if n > cap {
        return Err(CliError::Usage(format!("n = {n} exceeds the cap {cap} for alpha = {alpha}")));
    }
    Ok(())
}

fn json_text(v: &impl Serialize) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Failed(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn strings<F: Display>(v: &[F]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn basis_poly<F: Field>(n: usize, alpha: &F, basis: Basis) -> CliResult<Polynomial<F>> {
    Ok(match basis {
        Basis::Bessel => pn_polys(n, alpha)?.swap_remove(n),
        Basis::Monic => monic_p(n, alpha)?.swap_remove(n),
        Basis::Euler => gen_euler_poly(n, alpha),
        Basis::Orthogonal => unreachable!("handled by orthogonal_poly"),
    })
}

fn cmd_poly(n: usize, alpha: &AlphaMode, basis: Basis, format: Format) -> CliResult<String> {
    let cap = if basis == Basis::Orthogonal { SYMBOLIC_CAP } else { SYMBOLIC_POLY_CAP };
    check_cap(n, alpha, cap)?;
    let coeffs = match (alpha, basis) {
        (AlphaMode::Symbolic, Basis::Orthogonal) => strings(stieltjes_symbolic(n)?.0.polys[n].coeffs()),
        (AlphaMode::Fixed(a), Basis::Orthogonal) => strings(stieltjes_orthogonalize(n, a)?.0.polys[n].coeffs()),
        (AlphaMode::Symbolic, _) => strings(basis_poly(n, &RationalFunction::var(), basis)?.coeffs()),
        (AlphaMode::Fixed(a), _) => strings(basis_poly(n, a, basis)?.coeffs()),
    };
    match format {
        Format::Json => json_text(&json!({
            "basis": basis.name(),
            "n": n,
            "alpha": alpha.to_string(),
            "coefficients": coeffs,
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = coeffs.into_iter().enumerate().map(|(d, c)| vec![d.to_string(), c]).collect();
            Ok(csv_table(&["degree", "coefficient"], &rows))
        }
    }
}

fn cmd_moments(n: usize, alpha: &AlphaMode, format: Format) -> CliResult<String> {
    check_cap(n, alpha, SYMBOLIC_CAP)?;
    let values = match alpha {
        AlphaMode::Symbolic => strings(moments(n, &RationalFunction::var())?.values()),
        AlphaMode::Fixed(a) => strings(moments(n, a)?.values()),
    };
    match format {
        Format::Json => json_text(&json!({ "n": n, "alpha": alpha.to_string(), "moments": values })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = values.into_iter().enumerate().map(|(k, v)| vec![k.to_string(), v]).collect();
            Ok(csv_table(&["k", "moment"], &rows))
        }
    }
}

fn cmd_recur(n: usize, alpha: &AlphaMode, format: Format) -> CliResult<String> {
    check_cap(n, alpha, SYMBOLIC_CAP)?;
    // beta_N needs Q_N, so orthogonalize one step further and drop gamma_{N+1}.
    let (betas, mut gammas) = match alpha {
        AlphaMode::Symbolic => {
            let table = stieltjes_fraction_free(n + 1)?.recurrence()?;
            (strings(&table.betas), strings(&table.gammas))
        }
        AlphaMode::Fixed(a) => {
            let (_, table) = stieltjes_orthogonalize(n + 1, a)?;
            (strings(&table.betas), strings(&table.gammas))
        }
    };
    gammas.truncate(n);
    match format {
        Format::Json => json_text(&json!({ "n": n, "alpha": alpha.to_string(), "betas": betas, "gammas": gammas })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = (0..=n)
                .map(|k| {
                    let gamma = if k == 0 { String::new() } else { gammas[k - 1].clone() };
                    vec![k.to_string(), betas[k].clone(), gamma]
                })
                .collect();
            Ok(csv_table(&["n", "beta", "gamma"], &rows))
        }
    }
}

fn cmd_euler(n: usize, alpha: &str, format: Format) -> CliResult<String> {
    let alpha: Rational = alpha.parse()?;
    if !alpha.is_positive() {
        return Err(CliError::Usage(format!("alpha must be positive, got {alpha}")));
    }
    if n > FIXED_CAP {
        return Err(CliError::Usage(format!("n = {n} exceeds the cap {FIXED_CAP}")));
    }
    let cfg = QuadratureConfig::default();
    let reports = (0..=n).map(|k| euler_integral_probe(k, &alpha, &cfg)).collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => json_text(&reports),
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.alpha.to_string(),
                        format!("{:e}", r.integral_quadrature),
                        format!("{:e}", r.integral_exact),
                        r.euler_value.to_string(),
                        format!("{:e}", r.stated_constant),
                        format!("{:e}", r.fitted_constant),
                        format!("{:e}", r.ratio_fitted_to_stated),
                    ]
                })
                .collect();
            Ok(csv_table(
                &[
                    "n",
                    "alpha",
                    "integral_quadrature",
                    "integral_exact",
                    "euler_value",
                    "stated_constant",
                    "fitted_constant",
                    "ratio",
                ],
                &rows,
            ))
        }
    }
}

fn cmd_kl(taus: &[f64], xs: &[f64], abs_tol: f64, format: Format) -> CliResult<String> {
    let cfg = QuadratureConfig::default().with_abs_tol(abs_tol);
    cfg.validate()?;
    let mut rows = Vec::with_capacity(taus.len() * xs.len());
    for &tau in taus {
        for &x in xs {
            rows.push((tau, x, bessel_k_itau(tau, x, &cfg)?));
        }
    }
    match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                rows.iter().map(|(t, x, v)| vec![t.to_string(), x.to_string(), format!("{v:e}")]).collect();
            Ok(csv_table(&["tau", "x", "k_itau"], &rows))
        }
        Format::Json => {
            let table: Vec<Value> = rows.iter().map(|(t, x, v)| json!({ "tau": t, "x": x, "k_itau": v })).collect();
            json_text(&table)
        }
    }
}

fn cmd_stirling(n: usize, kind: StirlingKindArg, format: Format) -> CliResult<String> {
    if n > 200 {
        return Err(CliError::Usage(format!("n = {n} exceeds the cap 200")));
    }
    let (name, table) = match kind {
        StirlingKindArg::Second => ("second", StirlingTable::second_kind(n)),
        StirlingKindArg::Modified => ("modified", StirlingTable::modified_first_zero(n)),
    };
    match format {
        Format::Csv => Ok(table.to_csv()),
        Format::Json => {
            let rows: Vec<Vec<String>> = table.rows().iter().map(|r| strings(r)).collect();
            json_text(&json!({ "kind": name, "n": n, "rows": rows }))
        }
    }
}

fn cmd_verify(suite: &str, opts: &VerifyOptions, format: Format) -> CliResult<Output> {
    if format == Format::Csv {
        return Err(CliError::Usage("verify reports are JSON only".into()));
    }
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, opts)?;
    let count = |s: Status| report.checks.iter().filter(|c| c.status == s).count();
    eprintln!(
        "{}: {} pass, {} fail, {} report-only in {:.1} s",
        report.suite,
        count(Status::Pass),
        count(Status::Fail),
        count(Status::ReportOnly),
        report.wall_time
    );
    for c in report.failures() {
        eprintln!("FAIL {}: {} vs {}", c.id, c.lhs, c.rhs);
    }
    Ok(Output { text: json_text(&report)?, ok: report.passed() })
}
