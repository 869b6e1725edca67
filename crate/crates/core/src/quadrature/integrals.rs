//! The integral representations of `M` and `M₁`.

use super::{integrate_finite, integrate_semi_infinite, ExpEnvelope, Integrand, QuadResult};
use crate::constants::{EULER_GAMMA, ZETA_2};
use crate::error::Result;
use crate::eval::{EvalResult, IdentityReport};
use crate::numerics::{digamma, ein};

impl QuadResult {
    pub fn into_eval(self, method: &'static str) -> EvalResult {
        EvalResult::new(self.value, self.err_estimate, self.nodes_used, method)
    }
}

fn psi(x: f64) -> f64 {
    digamma(x).unwrap_or(f64::NAN)
}

/// `(ψ(1+t) + γ)/t`, with its limit `ζ(2)` at `t = 0`.
pub fn digamma_ratio_integrand() -> Integrand<'static> {
    Integrand::new(|t| (psi(1.0 + t) + EULER_GAMMA) / t).removable(0.0, ZETA_2)
}

/// `M = ∫_0^1 (ψ(1+t) + γ)/t dt`.
pub fn m_integral(tol: f64) -> Result<QuadResult> {
    integrate_finite(&digamma_ratio_integrand(), 0.0, 1.0, tol)
}

/// `M₁ = ∫_1^2 (ψ(1+t) + γ)/t dt`.
pub fn m1_integral(tol: f64) -> Result<QuadResult> {
    integrate_finite(&digamma_ratio_integrand(), 1.0, 2.0, tol)
}

/// `∫_0^2 (ψ(1+t) + γ)/t dt = M + M₁`.
pub fn m_over_0_2_integral(tol: f64) -> Result<QuadResult> {
    integrate_finite(&digamma_ratio_integrand(), 0.0, 2.0, tol)
}

/// `∫_0^∞ Ein(x)/(e^x - 1) dx`, which equals `M`.
pub fn ein_integral_h(tol: f64) -> Result<QuadResult> {
    let f = Integrand::new(|x| ein(x).unwrap_or(f64::NAN) / x.exp_m1())
        .removable(0.0, 1.0)
        .with_envelope(ExpEnvelope::default());
    integrate_semi_infinite(&f, tol)
}

/// `∫_0^1 (1-u) ln(1-u) / (u ln u) du`, which equals `M`.
///
/// The integrand tends to 0 at `u = 0` and grows like `-ln(1-u)` at `u = 1`.
pub fn log_integral_i(tol: f64) -> Result<QuadResult> {
    integrate_finite(&log_integrand(), 0.0, 1.0, tol)
}

pub(crate) fn log_integrand() -> Integrand<'static> {
    Integrand::new(|u: f64| (1.0 - u) * (-u).ln_1p() / (u * u.ln()))
        .removable(0.0, 0.0)
        .singular_at_upper()
}

/// `∫_0^1 (1 - γ - ψ(2-t))/t dt`; the numerator vanishes at 0 with slope
/// `ψ'(2) = ζ(2) - 1`.
pub fn remark1_integral(tol: f64) -> Result<QuadResult> {
    let f = Integrand::new(|t| (1.0 - EULER_GAMMA - psi(2.0 - t)) / t).removable(0.0, ZETA_2 - 1.0);
    integrate_finite(&f, 0.0, 1.0, tol)
}

/// `∫_0^1 (ψ(1+2t) - ψ(1+t))/t dt`, the left side of the `M₁` integral identity.
pub fn eq21_left_integral(tol: f64) -> Result<QuadResult> {
    let f = Integrand::new(|t| (psi(1.0 + 2.0 * t) - psi(1.0 + t)) / t).removable(0.0, ZETA_2);
    integrate_finite(&f, 0.0, 1.0, tol)
}

/// `∫_0^1 (ψ(1+2t) - ψ(1+t))/t dt = ∫_1^2 (ψ(1+t) + γ)/t dt`.
pub fn eq21_check(tol: f64) -> Result<IdentityReport> {
    let quad_tol = (0.1 * tol).max(1e-12);
    let lhs = eq21_left_integral(quad_tol)?.into_eval("eq21.left");
    let rhs = m1_integral(quad_tol)?.into_eval("m1.integral");
    Ok(IdentityReport::new("eq21", lhs, rhs, tol))
}
