//! Report rows, run configuration and their serialised forms.

use std::path::PathBuf;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{domain, Result};
use crate::eval::{IdentityReport, Status};
use crate::genfun::PointResult;
use crate::series::SeriesConfig;

/// Non-finite values are written as JSON `null`; read them back as NaN.
fn nan_from_null<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

/// One line of a suite report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub id: String,
    #[serde(deserialize_with = "nan_from_null")]
    pub lhs: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub rhs: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub abs_diff: f64,
    pub tol: f64,
    pub status: Status,
}

impl ResultRow {
    pub fn new(id: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let abs_diff = (lhs - rhs).abs();
        Self {
            id: id.into(),
            lhs,
            rhs,
            abs_diff,
            tol,
            status: Status::from_check(abs_diff, tol),
        }
    }

    /// A row counting violations of some property; passes only at zero.
    pub fn violations(id: impl Into<String>, count: usize) -> Self {
        Self::new(id, count as f64, 0.0, 0.0)
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }
}

impl From<&IdentityReport> for ResultRow {
    fn from(r: &IdentityReport) -> Self {
        Self {
            id: r.identity_id.clone(),
            lhs: r.lhs.value,
            rhs: r.rhs.value,
            abs_diff: r.abs_diff,
            tol: r.tolerance,
            status: r.status,
        }
    }
}

impl From<&PointResult> for ResultRow {
    fn from(p: &PointResult) -> Self {
        Self {
            id: p.id.clone(),
            lhs: p.lhs,
            rhs: p.rhs,
            abs_diff: p.abs_diff,
            tol: p.tol,
            status: p.status,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Self::Text),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(format!(
                "unknown format `{other}` (expected json, csv or text)"
            )),
        }
    }
}

/// Settings shared by every command. Missing keys in a config file take
/// the defaults below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tolerance: f64,
    pub max_terms: usize,
    pub suites: Vec<String>,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_terms: 100_000,
            suites: vec!["all".into()],
            output_path: None,
            output_format: OutputFormat::Text,
            seed: 20_240_601,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance >= 1e-12) || !self.tolerance.is_finite() {
            return Err(domain("RunConfig", self.tolerance, "tolerance >= 1e-12"));
        }
        if self.max_terms < 100 {
            return Err(domain(
                "RunConfig",
                self.max_terms as f64,
                "max_terms >= 100",
            ));
        }
        Ok(())
    }

    /// Term budgets derived from `max_terms`.
    pub fn series_config(&self) -> SeriesConfig {
        SeriesConfig {
            geometric_cap: self.max_terms.min(SeriesConfig::default().geometric_cap),
            slow_terms: self.max_terms,
        }
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: RunConfig,
    pub results: Vec<ResultRow>,
    pub wall_ms: u64,
    pub pass_count: usize,
    pub fail_count: usize,
}

impl SuiteReport {
    /// Sorts rows by id and fills in the counts.
    pub fn new(
        suite: impl Into<String>,
        config: RunConfig,
        mut results: Vec<ResultRow>,
        wall_ms: u64,
    ) -> Self {
        results.sort_by(|a, b| a.id.cmp(&b.id));
        let pass_count = results.iter().filter(|r| r.passed()).count();
        Self {
            suite: suite.into(),
            config,
            fail_count: results.len() - pass_count,
            pass_count,
            results,
            wall_ms,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.fail_count == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Fixed-width table followed by a summary line.
    pub fn to_text(&self) -> String {
        let width = self
            .results
            .iter()
            .map(|r| r.id.len())
            .max()
            .unwrap_or(2)
            .max(2);
        let mut out = format!(
            "{:<width$}  {:>22}  {:>22}  {:>10}  {:>8}  status\n",
            "id", "lhs", "rhs", "abs_diff", "tol"
        );
        for r in &self.results {
            out.push_str(&format!(
                "{:<width$}  {:>22.16}  {:>22.16}  {:>10.3e}  {:>8.1e}  {}\n",
                r.id, r.lhs, r.rhs, r.abs_diff, r.tol, r.status
            ));
        }
        out.push_str(&format!(
            "suite {}: {} passed, {} failed ({} ms)\n",
            self.suite, self.pass_count, self.fail_count, self.wall_ms
        ));
        out
    }
}
