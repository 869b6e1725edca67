//! Double-exponential (tanh–sinh) quadrature.
//!
//! The substitution `x = c + h·tanh(π/2·sinh t)` maps `[a, b]` onto the real
//! line and makes the transformed integrand decay doubly exponentially, so the
//! trapezoid rule in `t` converges exponentially even when the integrand has
//! integrable logarithmic or algebraic singularities at the endpoints. Each
//! level halves the step and reuses every previous node.
//!
//! Removable singularities (`0/0` points such as `t = 0` in `(ψ(1+t)+γ)/t`)
//! are declared on the [`Integrand`] together with their limit value instead
//! of being nudged around.

mod integrals;

pub use integrals::{
    digamma_ratio_integrand, ein_integral_h, eq21_check, eq21_left_integral, log_integral_i,
    m1_integral, m_integral, m_over_0_2_integral, remark1_integral,
};

use std::f64::consts::FRAC_PI_2;

use crate::constants::EULER_GAMMA;
use crate::error::{domain, Error, Result};

/// Highest refinement level; level `k` uses the step `2^{-k}`.
pub const LEVEL_CAP: usize = 12;
/// Abscissae closer than this to a removable point take the registered limit.
pub const REMOVABLE_RADIUS: f64 = 1e-12;
/// Half-width of the truncated `t` range. At `t = 4` the distance to the
/// endpoint is ~1e-37 of the interval and the weight is of the same order.
const T_MAX: f64 = 4.0;
/// Smallest cutoff used for semi-infinite integrals.
pub const SEMI_INFINITE_MIN_CUTOFF: f64 = 45.0;

/// Bound `|f(x)| ≤ 2 (c_log·ln x + Σ_k c_k x^k) e^{-x}` for `x` beyond the
/// cutoff. The factor 2 covers `1/(1 - e^{-x})` in Bose-type integrands.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpEnvelope {
    pub log_coeff: f64,
    pub poly: Vec<f64>,
}

impl Default for ExpEnvelope {
    /// `(ln x + γ + 1) e^{-x}`, enough for `Ein(x)/(e^x - 1)`.
    fn default() -> Self {
        Self {
            log_coeff: 1.0,
            poly: vec![EULER_GAMMA + 1.0],
        }
    }
}

impl ExpEnvelope {
    pub fn polynomial(poly: Vec<f64>) -> Self {
        Self {
            log_coeff: 0.0,
            poly,
        }
    }

    /// `∫_X^∞` of the envelope.
    pub fn tail_bound(&self, cutoff: f64) -> f64 {
        let decay = (-cutoff).exp();
        let log_part = self.log_coeff * (cutoff.ln() + 1.0 / cutoff);
        // ∫_X^∞ x^k e^{-x} dx = k! e^{-X} Σ_{j≤k} X^j / j!
        let mut poly_part = 0.0;
        let mut fact = 1.0;
        let mut partial = 0.0;
        let mut x_pow_over_fact = 1.0;
        for (k, c) in self.poly.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
                x_pow_over_fact *= cutoff / k as f64;
            }
            partial += x_pow_over_fact;
            poly_part += c.abs() * fact * partial;
        }
        2.0 * decay * (log_part + poly_part)
    }
}

/// A real integrand plus what the engine needs to know about its trouble spots.
pub struct Integrand<'a> {
    evaluator: Box<dyn Fn(f64) -> f64 + 'a>,
    singular_lower: bool,
    singular_upper: bool,
    removable_points: Vec<(f64, f64)>,
    envelope: ExpEnvelope,
}

impl std::fmt::Debug for Integrand<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Integrand")
            .field("singular_lower", &self.singular_lower)
            .field("singular_upper", &self.singular_upper)
            .field("removable_points", &self.removable_points)
            .field("envelope", &self.envelope)
            .finish_non_exhaustive()
    }
}

impl<'a> Integrand<'a> {
    pub fn new(f: impl Fn(f64) -> f64 + 'a) -> Self {
        Self {
            evaluator: Box::new(f),
            singular_lower: false,
            singular_upper: false,
            removable_points: Vec::new(),
            envelope: ExpEnvelope::default(),
        }
    }

    /// Registers a `0/0` point with its analytic limit.
    pub fn removable(mut self, location: f64, limit: f64) -> Self {
        self.removable_points.push((location, limit));
        self
    }

    pub fn singular_at_lower(mut self) -> Self {
        self.singular_lower = true;
        self
    }

    pub fn singular_at_upper(mut self) -> Self {
        self.singular_upper = true;
        self
    }

    /// Decay envelope used to choose the cutoff of semi-infinite integrals.
    pub fn with_envelope(mut self, envelope: ExpEnvelope) -> Self {
        self.envelope = envelope;
        self
    }

    /// `(lower, upper)` flags for declared endpoint singularities.
    pub fn singular_endpoints(&self) -> (bool, bool) {
        (self.singular_lower, self.singular_upper)
    }

    /// Overflowing values within `1e-10` of a declared singular endpoint are
    /// dropped instead of reported.
    fn near_singular_endpoint(&self, x: f64, a: f64, b: f64) -> bool {
        let radius = 1e-10 * (b - a);
        (self.singular_lower && x - a <= radius) || (self.singular_upper && b - x <= radius)
    }

    pub fn removable_points(&self) -> &[(f64, f64)] {
        &self.removable_points
    }

    pub fn eval(&self, x: f64) -> f64 {
        for &(loc, limit) in &self.removable_points {
            if (x - loc).abs() <= REMOVABLE_RADIUS {
                return limit;
            }
        }
        (self.evaluator)(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub nodes_used: usize,
    pub converged: bool,
}

/// Tanh–sinh rule with level doubling.
#[derive(Debug, Clone, Copy)]
pub struct TanhSinh {
    pub max_level: usize,
    /// Levels always computed before the convergence test is trusted.
    pub min_level: usize,
}

impl Default for TanhSinh {
    fn default() -> Self {
        Self {
            max_level: LEVEL_CAP,
            min_level: 3,
        }
    }
}

impl TanhSinh {
    /// Integrates until two successive levels differ by at most `tol`
    /// (absolute), or the level cap is hit; `converged` tells which.
    pub fn integrate(&self, f: &Integrand<'_>, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
        let mut last = QuadResult {
            value: f64::NAN,
            err_estimate: f64::INFINITY,
            nodes_used: 0,
            converged: false,
        };
        let mut rule = Levels::new(f, a, b);
        for level in 0..=self.max_level {
            let (value, nodes) = rule.next_level()?;
            let err_estimate = (value - last.value).abs();
            last = QuadResult {
                value,
                err_estimate: if level == 0 {
                    f64::INFINITY
                } else {
                    err_estimate
                },
                nodes_used: nodes,
                converged: false,
            };
            if level >= self.min_level && err_estimate <= tol {
                last.converged = true;
                return Ok(last);
            }
        }
        Ok(last)
    }

    /// The estimate at every level `0..=max_level`, for convergence studies.
    pub fn level_estimates(&self, f: &Integrand<'_>, a: f64, b: f64) -> Result<Vec<f64>> {
        let mut rule = Levels::new(f, a, b);
        (0..=self.max_level)
            .map(|_| rule.next_level().map(|(v, _)| v))
            .collect()
    }
}

struct Levels<'f, 'a> {
    f: &'f Integrand<'a>,
    a: f64,
    b: f64,
    level: usize,
    sum: f64,
    nodes: usize,
}

impl<'f, 'a> Levels<'f, 'a> {
    fn new(f: &'f Integrand<'a>, a: f64, b: f64) -> Self {
        Self {
            f,
            a,
            b,
            level: 0,
            sum: 0.0,
            nodes: 0,
        }
    }

    /// Weighted integrand at `t` and `-t`. The distance to the nearer endpoint
    /// is computed as `1 - tanh(u) = 2/(e^{2u} + 1)` so that abscissae close
    /// to the endpoints keep full relative accuracy there.
    fn pair(&self, t: f64) -> Result<f64> {
        let half = 0.5 * (self.b - self.a);
        let u = FRAC_PI_2 * t.sinh();
        let cosh_u = u.cosh();
        let weight = FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        let gap = half * 2.0 / ((2.0 * u).exp() + 1.0);
        let mut total = 0.0;
        for x in [self.a + gap, self.b - gap] {
            if x <= self.a || x >= self.b {
                // Rounded onto an endpoint; the neglected mass is below the
                // spacing of doubles there.
                continue;
            }
            let y = self.f.eval(x);
            if !y.is_finite() {
                if self.f.near_singular_endpoint(x, self.a, self.b) {
                    continue;
                }
                return Err(Error::NonFiniteIntegrand { x });
            }
            total += weight * y;
        }
        Ok(total * half)
    }

    fn next_level(&mut self) -> Result<(f64, usize)> {
        let level = self.level;
        let h = 0.5f64.powi(level as i32);
        if level == 0 {
            let mid = 0.5 * (self.a + self.b);
            let y = self.f.eval(mid);
            if !y.is_finite() {
                return Err(Error::NonFiniteIntegrand { x: mid });
            }
            self.sum = FRAC_PI_2 * 0.5 * (self.b - self.a) * y;
            self.nodes = 1;
            let mut k = 1;
            while k as f64 * h <= T_MAX {
                self.sum += self.pair(k as f64 * h)?;
                self.nodes += 2;
                k += 1;
            }
        } else {
            let mut k = 1;
            while k as f64 * h <= T_MAX {
                self.sum += self.pair(k as f64 * h)?;
                self.nodes += 2;
                k += 2;
            }
        }
        self.level += 1;
        Ok((self.sum * h, self.nodes))
    }
}

fn check_interval(a: f64, b: f64, tol: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain("integrate_finite", b - a, "finite a < b"));
    }
    if !(tol >= 1e-12) {
        return Err(domain("integrate_finite", tol, "tol >= 1e-12"));
    }
    Ok(())
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate_finite(f: &Integrand<'_>, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    check_interval(a, b, tol)?;
    let r = TanhSinh::default().integrate(f, a, b, tol)?;
    if r.converged {
        Ok(r)
    } else {
        Err(Error::NonConvergence {
            estimate: r.value,
            err_estimate: r.err_estimate,
            nodes: r.nodes_used,
        })
    }
}

/// Cutoff `X ≥ 45` at which the integrand's envelope tail drops below `tol/10`.
pub fn semi_infinite_cutoff(envelope: &ExpEnvelope, tol: f64) -> f64 {
    let mut cutoff = SEMI_INFINITE_MIN_CUTOFF;
    while envelope.tail_bound(cutoff) >= 0.1 * tol && cutoff < 700.0 {
        cutoff += 5.0;
    }
    cutoff
}

/// `∫_0^∞ f` for integrands decaying like `e^{-x}` times a polynomial or
/// logarithm: tanh–sinh on `[0, X]` plus the envelope bound for `[X, ∞)`.
pub fn integrate_semi_infinite(f: &Integrand<'_>, tol: f64) -> Result<QuadResult> {
    if !(tol >= 1e-12) {
        return Err(domain("integrate_semi_infinite", tol, "tol >= 1e-12"));
    }
    let cutoff = semi_infinite_cutoff(&f.envelope, tol);
    let tail = f.envelope.tail_bound(cutoff);
    let r = TanhSinh::default().integrate(f, 0.0, cutoff, 0.9 * tol)?;
    let err_estimate = r.err_estimate + tail;
    if r.converged && err_estimate <= tol {
        Ok(QuadResult { err_estimate, ..r })
    } else {
        Err(Error::NonConvergence {
            estimate: r.value,
            err_estimate,
            nodes: r.nodes_used,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_reference_integrals() {
        let one = Integrand::new(|_| 1.0);
        assert!((integrate_finite(&one, 0.0, 1.0, 1e-12).unwrap().value - 1.0).abs() < 1e-14);

        let log = Integrand::new(|t: f64| -t.ln()).singular_at_lower();
        let r = integrate_finite(&log, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13, "{r:?}");

        let tlog = Integrand::new(|t: f64| t * t.ln()).removable(0.0, 0.0);
        let r = integrate_finite(&tlog, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value + 0.25).abs() < 1e-14);
    }

    #[test]
    fn algebraic_endpoint_singularity() {
        let f = Integrand::new(|t: f64| 1.0 / t.sqrt()).singular_at_lower();
        let r = integrate_finite(&f, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn general_interval() {
        let f = Integrand::new(|x: f64| x.exp());
        let r = integrate_finite(&f, -1.0, 2.0, 1e-12).unwrap();
        assert!((r.value - (2f64.exp() - (-1f64).exp())).abs() < 1e-13);
    }

    #[test]
    fn semi_infinite_references() {
        let f =
            Integrand::new(|x: f64| (-x).exp()).with_envelope(ExpEnvelope::polynomial(vec![0.5]));
        let r = integrate_semi_infinite(&f, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);

        let bose1 = Integrand::new(|x: f64| x / x.exp_m1())
            .removable(0.0, 1.0)
            .with_envelope(ExpEnvelope::polynomial(vec![0.0, 1.0]));
        let r = integrate_semi_infinite(&bose1, 1e-12).unwrap();
        assert!((r.value - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);

        let bose2 = Integrand::new(|x: f64| x * x / x.exp_m1())
            .removable(0.0, 0.0)
            .with_envelope(ExpEnvelope::polynomial(vec![0.0, 0.0, 1.0]));
        let r = integrate_semi_infinite(&bose2, 1e-12).unwrap();
        assert!((r.value - 2.404_113_806_319_188_6).abs() < 1e-12);
    }

    #[test]
    fn removable_point_supplies_limit() {
        let f = Integrand::new(|t: f64| t.sin() / t).removable(0.0, 1.0);
        assert_eq!(f.eval(0.0), 1.0);
        assert_eq!(f.eval(1e-13), 1.0);
        assert!((f.eval(0.5) - 0.5f64.sin() / 0.5).abs() < 1e-16);
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let f = Integrand::new(|t: f64| 1.0 / (t - 0.5));
        assert!(matches!(
            integrate_finite(&f, 0.0, 1.0, 1e-10),
            Err(Error::NonFiniteIntegrand { .. })
        ));
    }

    #[test]
    fn cap_reports_non_convergence() {
        let f = Integrand::new(|t: f64| (200.0 * t).sin());
        let engine = TanhSinh {
            max_level: 2,
            min_level: 1,
        };
        let r = engine.integrate(&f, 0.0, 1.0, 1e-12).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn rejects_bad_intervals() {
        let f = Integrand::new(|_| 1.0);
        assert!(integrate_finite(&f, 1.0, 0.0, 1e-10).is_err());
        assert!(integrate_finite(&f, 0.0, 1.0, 1e-14).is_err());
    }

    #[test]
    fn envelope_tail_bound_matches_gamma_integrals() {
        // ∫_X^∞ 2 x e^{-x} dx = 2 (X + 1) e^{-X}
        let env = ExpEnvelope::polynomial(vec![0.0, 1.0]);
        let x: f64 = 10.0;
        assert!((env.tail_bound(x) - 2.0 * (x + 1.0) * (-x).exp()).abs() < 1e-18);
    }
}
