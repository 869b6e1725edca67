//! Result types shared by every route and identity check.

use serde::{Deserialize, Serialize};

/// A computed value with an error bound and the amount of work it took.
///
/// `err_bound` is rigorous when the route has a provable tail bound (the
/// geometric majorants for zeta tails) and a conservative estimate
/// otherwise (Euler–Maclaurin remainders, quadrature level differences).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub err_bound: f64,
    /// Series terms or quadrature nodes.
    pub terms_used: usize,
    pub method: &'static str,
}

impl EvalResult {
    pub fn new(value: f64, err_bound: f64, terms_used: usize, method: &'static str) -> Self {
        debug_assert!(err_bound >= 0.0 || err_bound.is_nan());
        Self {
            value,
            err_bound,
            terms_used,
            method,
        }
    }

    /// A closed-form value, exact up to a few rounding errors.
    pub fn closed_form(value: f64) -> Self {
        Self::new(value, 4.0 * f64::EPSILON * value.abs(), 0, "closed-form")
    }

    /// Same result, shifted by a known constant.
    pub fn offset(self, delta: f64) -> Self {
        let value = self.value + delta;
        Self {
            value,
            err_bound: self.err_bound + f64::EPSILON * value.abs(),
            ..self
        }
    }

    pub fn with_method(self, method: &'static str) -> Self {
        Self { method, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_check(abs_diff: f64, tolerance: f64) -> Self {
        if abs_diff <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Both sides of one identity and whether they agree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub lhs: EvalResult,
    pub rhs: EvalResult,
    pub abs_diff: f64,
    pub tolerance: f64,
    pub status: Status,
}

impl IdentityReport {
    pub fn new(id: impl Into<String>, lhs: EvalResult, rhs: EvalResult, tolerance: f64) -> Self {
        let abs_diff = (lhs.value - rhs.value).abs();
        Self::with_diff(id, lhs, rhs, abs_diff, tolerance)
    }

    /// For checks whose discrepancy is not simply `|lhs - rhs|` (relative
    /// checks, three-way comparisons).
    pub fn with_diff(
        id: impl Into<String>,
        lhs: EvalResult,
        rhs: EvalResult,
        abs_diff: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            identity_id: id.into(),
            lhs,
            rhs,
            abs_diff,
            tolerance,
            status: Status::from_check(abs_diff, tolerance),
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }
}
