//! `harmzeta`: compute `M` and `M₁` by any route and run the identity suites.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 a tolerance could not be certified within the term budget.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use harmzeta_core::constants::{M1_REFERENCE, M_REFERENCE};
use harmzeta_core::genfun::{run_grid, GenfunId, GridSpec, PointOutcome};
use harmzeta_core::suites::{m1_routes, m_routes, run_suites, spread};
use harmzeta_core::{Error, EvalResult, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "harmzeta",
    version,
    about = "Routes to M = ∫₀¹ (ψ(1+t)+γ)/t dt and related identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Absolute tolerance (>= 1e-12)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Term budget for slowly convergent series (>= 100)
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file with RunConfig keys; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for the randomised property checks
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate M or M1 by one route or all of them
    Compute {
        #[arg(value_enum)]
        constant: Constant,
        /// Route id (e.g. thm1.a, prop3.l, m.integral) or "all"
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Run verification suites
    Verify {
        /// Comma-separated: core, m-routes, identities, bounds, genfun, transforms, all
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
    },
    /// Check one generating-function identity on a grid
    Grid {
        /// eq1, eq2, eq5, eq8, eq9, eq10, eq11, eq13, eq18, thm3.14, thm3.15
        identity: String,
        /// Hurwitz parameters
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        /// x as a fraction of the disk radius
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xfrac: Vec<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Constant {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "M1", alias = "m1")]
    M1,
}

enum Failure {
    Usage(String),
    Unreachable(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ToleranceUnreachable { .. } => Failure::Unreachable(e.to_string()),
            Error::UnknownId(_) | Error::Domain { .. } => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Unreachable(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load_config(g: &GlobalOpts) -> Result<RunConfig, Failure> {
    let mut cfg = match &g.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::from_json(&text)
                .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(t) = g.tol {
        cfg.tolerance = t;
    }
    if let Some(m) = g.max_terms {
        cfg.max_terms = m;
    }
    if let Some(f) = g.format {
        cfg.output_format = f.into();
    }
    if let Some(o) = &g.out {
        cfg.output_path = Some(o.clone());
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let mut cfg = load_config(&cli.global)?;
    match cli.command {
        Command::Compute { constant, method } => compute(&cfg, constant, &method),
        Command::Verify { suite } => {
            if !suite.is_empty() {
                cfg.suites = suite;
            }
            let report = run_suites(&cfg)?;
            let text = match cfg.output_format {
                OutputFormat::Json => report.to_json() + "\n",
                OutputFormat::Text => report.to_text(),
                OutputFormat::Csv => to_csv(&report.results)?,
            };
            emit(&cfg, &text)?;
            if cfg.output_path.is_some() {
                eprintln!(
                    "suite {}: {} passed, {} failed",
                    report.suite, report.pass_count, report.fail_count
                );
            }
            Ok(report.all_passed())
        }
        Command::Grid { identity, a, xfrac } => grid(&cfg, &identity, a, xfrac),
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), Failure> {
    match &cfg.output_path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Other(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Other(e.to_string()))
        }
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Other(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Other(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Other(e.to_string()))
}

#[derive(Serialize)]
struct ComputeRow {
    method: &'static str,
    value: f64,
    err_bound: f64,
    terms: usize,
    deviation: f64,
}

#[derive(Serialize)]
struct ComputeReport {
    constant: &'static str,
    reference: f64,
    spread: f64,
    rows: Vec<ComputeRow>,
}

fn compute(cfg: &RunConfig, constant: Constant, method: &str) -> Result<bool, Failure> {
    let (name, reference, routes) = match constant {
        Constant::M => ("M", M_REFERENCE, m_routes(cfg)?),
        Constant::M1 => ("M1", M1_REFERENCE, m1_routes(cfg)?),
    };
    let selected: Vec<(&'static str, EvalResult)> = if method == "all" {
        routes
    } else {
        let known: Vec<_> = routes.iter().map(|r| r.0).collect();
        let found: Vec<_> = routes.into_iter().filter(|r| r.0 == method).collect();
        if found.is_empty() {
            return Err(Failure::Usage(format!(
                "unknown method `{method}` for {name}; expected one of: all, {}",
                known.join(", ")
            )));
        }
        found
    };
    let (hi, lo) = spread(&selected);
    let rows: Vec<ComputeRow> = selected
        .iter()
        .map(|(id, r)| ComputeRow {
            method: id,
            value: r.value,
            err_bound: r.err_bound,
            terms: r.terms_used,
            deviation: r.value - reference,
        })
        .collect();
    let report = ComputeReport {
        constant: name,
        reference,
        spread: hi - lo,
        rows,
    };
    let text = match cfg.output_format {
        OutputFormat::Json => serde_json::to_string_pretty(&report).expect("serialises") + "\n",
        OutputFormat::Csv => to_csv(&report.rows)?,
        OutputFormat::Text => {
            let mut s = format!(
                "{:<12}  {:>20}  {:>10}  {:>8}  {:>11}\n",
                "method", name, "err_bound", "terms", "deviation"
            );
            for r in &report.rows {
                s.push_str(&format!(
                    "{:<12}  {:>20.16}  {:>10.2e}  {:>8}  {:>11.2e}\n",
                    r.method, r.value, r.err_bound, r.terms, r.deviation
                ));
            }
            s.push_str(&format!("spread {:.3e}\n", report.spread));
            s
        }
    };
    emit(cfg, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct GridRow {
    id: String,
    a: f64,
    x: f64,
    lhs: f64,
    rhs: f64,
    abs_diff: f64,
    tol: f64,
    status: String,
    note: String,
}

fn grid(cfg: &RunConfig, identity: &str, a: Vec<f64>, xfrac: Vec<f64>) -> Result<bool, Failure> {
    let gid = GenfunId::from_id(identity)?;
    let default = GridSpec::default();
    let spec = GridSpec {
        a_values: if a.is_empty() { default.a_values } else { a },
        x_fractions: if xfrac.is_empty() {
            default.x_fractions
        } else {
            xfrac
        },
    };
    if let Some(bad) = spec.a_values.iter().find(|v| v.is_nan() || **v <= 0.0) {
        return Err(Failure::Usage(format!("a must be positive, got {bad}")));
    }
    let report = run_grid(gid, &spec, cfg.tolerance)?;
    let rows: Vec<GridRow> = report
        .points
        .iter()
        .map(|p| match p {
            PointOutcome::Evaluated(r) => GridRow {
                id: r.id.clone(),
                a: r.a,
                x: r.x,
                lhs: r.lhs,
                rhs: r.rhs,
                abs_diff: r.abs_diff,
                tol: r.tol,
                status: r.status.to_string(),
                note: r.note.clone().unwrap_or_default(),
            },
            PointOutcome::Skipped { a, x, reason } => GridRow {
                id: format!("{gid}@a={a},x={x}"),
                a: *a,
                x: *x,
                lhs: f64::NAN,
                rhs: f64::NAN,
                abs_diff: f64::NAN,
                tol: cfg.tolerance,
                status: "skipped".into(),
                note: reason.clone(),
            },
        })
        .collect();
    let text = match cfg.output_format {
        OutputFormat::Json => serde_json::to_string_pretty(&report).expect("serialises") + "\n",
        OutputFormat::Csv => to_csv(&rows)?,
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &rows {
                s.push_str(&format!(
                    "{:<28}  {:>22.16}  {:>22.16}  {:>10.3e}  {:<7}  {}\n",
                    r.id, r.lhs, r.rhs, r.abs_diff, r.status, r.note
                ));
            }
            s.push_str(&format!(
                "{}: {} evaluated, {} skipped, max |diff| {:.3e}, {}\n",
                gid,
                rows.len() - report.skipped_count(),
                report.skipped_count(),
                report.max_abs_diff,
                report.status
            ));
            s
        }
    };
    emit(cfg, &text)?;
    Ok(report.passed())
}
