//! Numerical routes to the constant `M = ∫_0^1 (ψ(1+t) + γ)/t dt ≈ 1.2577469`
//! and machine checks of the series identities built around it.

// NaN must fail every range check, so `!(x < y)` is used deliberately.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod eval;
pub mod genfun;
pub mod numerics;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod suites;
pub mod sum;
pub mod transforms;

pub use constants::ConstantsRegistry;
pub use error::{Error, Result};
pub use eval::{EvalResult, IdentityReport, Status};
pub use genfun::{GenfunId, GenfunReport, GridSpec};
pub use report::{OutputFormat, ResultRow, RunConfig, SuiteReport};
pub use series::{SeriesConfig, SeriesMethod, TailPolicy};
