use thiserror::Error;

/// Errors raised by the numerical routines and identity checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument {value} outside the domain ({expected})")]
    Domain {
        op: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{op}: |x| = {value} exceeds the supported range")]
    Overflow { op: &'static str, value: f64 },

    #[error(
        "{what}: cannot certify tolerance {tol:e} within {max_terms} terms (best bound {bound:e})"
    )]
    ToleranceUnreachable {
        what: String,
        tol: f64,
        bound: f64,
        max_terms: usize,
    },

    #[error("quadrature did not converge: estimate {estimate} with error {err_estimate:e} after {nodes} nodes")]
    NonConvergence {
        estimate: f64,
        err_estimate: f64,
        nodes: usize,
    },

    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("index range mismatch: {0}")]
    IndexMismatch(String),

    #[error("{id}: point (a = {a}, x = {x}) lies outside the admissible disk ({rule})")]
    DiskViolation {
        id: String,
        a: f64,
        x: f64,
        rule: &'static str,
    },

    #[error("{what}: supplied tail bound {bound:e} is not below tolerance {tol:e}")]
    TailBound { what: String, bound: f64, tol: f64 },

    #[error("{what}: n = {n} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("unknown identifier `{0}`")]
    UnknownId(String),

    #[error(
        "stored constant {name} = {stored} disagrees with computed {computed} (|diff| = {diff:e})"
    )]
    ConstantMismatch {
        name: &'static str,
        stored: f64,
        computed: f64,
        diff: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(op: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        op,
        value,
        expected,
    }
}
