//! Series evaluation with certified truncation.
//!
//! Two evaluators cover every series in the catalog:
//!
//! * [`geometric_series`] for terms dominated by a majorant whose successive
//!   ratios are bounded by `q < 1`. Summation stops at the first `N` with
//!   `majorant(N+1)/(1 - q) ≤ tol/10`. The zeta tails are bounded by
//!   `2^{-n} < ζ(n) - 1 < 2^{-n}(n+1)/(n-1)`, and more generally by
//!   `ζ(s, a) ≤ a^{-s} + (a+1)^{-s}(s+a)/(s-1)`, harmonic weights by
//!   `H_n ≤ 1 + ln n` and skew-harmonic ones by `|H_n^-| ≤ 1`.
//! * [`slow_series`] for terms decaying like a power of `1/n`: a head sum up
//!   to `N`, then `∫_N^∞ f + f(N)/2 - f'(N)/12` for the remainder. The
//!   integral is taken in the variable `u = 1/t`, which maps it onto
//!   `(0, 1/N]`.

mod catalog;

pub(crate) use catalog::{harmonic_bound, harmonic_bound_ratio, zeta_times_power, HarmonicTable};

pub use catalog::{
    fixed_identity, harmonic_hurwitz_power_series, m1_series, m1_series_with, m_series,
    m_series_with, prop1_partial_sum_check, prop2_check, prop2_check_with, s_n,
    s_n_by_zeta_subtraction, s_n_upper_bound, zeta_tail_majorant, FIXED_IDENTITIES, M1_METHODS,
    M_METHODS, PROP1_TOL,
};

use crate::error::{domain, Error, Result};
use crate::eval::EvalResult;
use crate::quadrature::{integrate_finite, Integrand};
use crate::sum::NeumaierSum;
use serde::{Deserialize, Serialize};

/// Every numerically evaluated series, keyed by a stable string id.
///
/// | id | series |
/// |----|--------|
/// | `thm1.a` | `Σ_{n≥1} (-1)^{n-1} ζ(n+1)/n` |
/// | `thm1.b` | `Σ_{n≥1} ln(1 + 1/n)/n` |
/// | `thm1.c` | `Σ_{n≥1} ln(n+1)/(n(n+1))` |
/// | `thm1.d` | `Σ_{n≥1} H_n (ζ(n+1) - 1)` |
/// | `thm1.e` | `Σ_{n≥2} H_n (ζ(n) - 1)`, minus `1 - γ` |
/// | `thm1.f` | `Σ_{n≥1} S_n/n` |
/// | `thm1.g` | `Σ_{n≥1} H_n^- (ζ(n+1) - ζ(n+2))`, plus `ln 2` |
/// | `thm1.j` | `Σ_{n≥1} b_n/(n 2^n)`, `b_n = Σ_k C(n,k)(-1)^{k-1} ζ(k+1)` |
/// | `prop3.k` | `Σ_{n≥1} ln(1 + 1/(n+1))/n` |
/// | `prop3.l` | `Σ_{n≥1} H_n^- (ζ(n+1) - 1)` |
/// | `prop3.m` | `Σ_{n≥1} (-1)^{n-1} S_n/n` |
/// | `goldbach` | `Σ_{n≥2} (ζ(n) - 1) = 1` |
/// | `eq3` | `Σ_{n≥2} (ζ(n) - 1)/n = 1 - γ` |
/// | `eq4` | `Σ_{n≥2} (-1)^n ζ(n)/n = γ` |
/// | `eq6` | `Σ_{n≥2} H_n^- (ζ(n) - ζ(n+1)) = ζ(2) - γ - ln 2` |
/// | `eq7` | `Σ_{n≥2} H_n (ζ(n) - ζ(n+1)) = ζ(2) - γ` |
/// | `eq12` | `Σ_{n≥2} (-1)^n H_n (ζ(n) + ζ(n+1) - 2) = ζ(2) + γ - 2 + ln 2` |
/// | `remark1` | `Σ_{k≥1} (ζ(k+1) - 1)/k = Σ_{k≥1} H_k (ζ(k+1) - ζ(k+2))` |
///
/// The first eight evaluate `M`, the next three `M₁`; the rest are identities
/// with closed right-hand sides. `S_n = Σ_{k≥2} k^{-n}/(k-1)`, see [`s_n`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesMethod {
    AlternatingZeta,
    LogReciprocal,
    LogOverPronic,
    HarmonicZetaTail,
    HarmonicZetaTailShifted,
    ZetaBlock,
    SkewHarmonicZetaStep,
    BinomialTransform,
    LogShiftedReciprocal,
    SkewHarmonicZetaTail,
    AlternatingZetaBlock,
    ZetaTailSum,
    ZetaTailOverN,
    AlternatingZetaOverN,
    SkewHarmonicSteps,
    HarmonicSteps,
    AlternatingHarmonicPairs,
    ZetaTailByParts,
}

/// How the neglected tail of a series is controlled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TailPolicy {
    /// Terms dominated by `c·q^n`; the tail bound is a geometric sum.
    GeometricBound,
    /// Alternating, eventually monotone terms; the tail is below the first
    /// omitted term.
    AlternatingBound,
    /// Head sum plus an Euler–Maclaurin estimate of the remainder.
    EulerMaclaurin,
    /// A finite sum; nothing is neglected.
    FixedN,
}

impl SeriesMethod {
    pub const ALL: [SeriesMethod; 18] = [
        Self::AlternatingZeta,
        Self::LogReciprocal,
        Self::LogOverPronic,
        Self::HarmonicZetaTail,
        Self::HarmonicZetaTailShifted,
        Self::ZetaBlock,
        Self::SkewHarmonicZetaStep,
        Self::BinomialTransform,
        Self::LogShiftedReciprocal,
        Self::SkewHarmonicZetaTail,
        Self::AlternatingZetaBlock,
        Self::ZetaTailSum,
        Self::ZetaTailOverN,
        Self::AlternatingZetaOverN,
        Self::SkewHarmonicSteps,
        Self::HarmonicSteps,
        Self::AlternatingHarmonicPairs,
        Self::ZetaTailByParts,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::AlternatingZeta => "thm1.a",
            Self::LogReciprocal => "thm1.b",
            Self::LogOverPronic => "thm1.c",
            Self::HarmonicZetaTail => "thm1.d",
            Self::HarmonicZetaTailShifted => "thm1.e",
            Self::ZetaBlock => "thm1.f",
            Self::SkewHarmonicZetaStep => "thm1.g",
            Self::BinomialTransform => "thm1.j",
            Self::LogShiftedReciprocal => "prop3.k",
            Self::SkewHarmonicZetaTail => "prop3.l",
            Self::AlternatingZetaBlock => "prop3.m",
            Self::ZetaTailSum => "goldbach",
            Self::ZetaTailOverN => "eq3",
            Self::AlternatingZetaOverN => "eq4",
            Self::SkewHarmonicSteps => "eq6",
            Self::HarmonicSteps => "eq7",
            Self::AlternatingHarmonicPairs => "eq12",
            Self::ZetaTailByParts => "remark1",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.id() == id)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn tail_policy(self) -> TailPolicy {
        match self {
            Self::LogReciprocal | Self::LogOverPronic | Self::LogShiftedReciprocal => {
                TailPolicy::EulerMaclaurin
            }
            _ => TailPolicy::GeometricBound,
        }
    }
}

impl std::fmt::Display for SeriesMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Term budgets. Exceeding them raises [`Error::ToleranceUnreachable`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Maximum terms for geometrically convergent series.
    pub geometric_cap: usize,
    /// Head length `N` for series summed with an Euler–Maclaurin tail.
    pub slow_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            geometric_cap: 10_000,
            slow_terms: 100_000,
        }
    }
}

pub(crate) fn check_tol(op: &'static str, tol: f64) -> Result<()> {
    if tol >= 1e-12 && tol.is_finite() {
        Ok(())
    } else {
        Err(domain(op, tol, "tol >= 1e-12"))
    }
}

/// Relative error charged to every term computed from zeta values.
const TERM_REL_ERR: f64 = 8.0 * f64::EPSILON;

/// A series `Σ_{n≥start} term(n)` with `|term(n)| ≤ majorant(n)` and
/// `majorant(n+1) ≤ ratio(m)·majorant(n)` for all `n ≥ m`.
pub struct GeometricSeries<'a> {
    pub id: &'static str,
    pub start: u32,
    pub term: &'a dyn Fn(u32) -> Result<f64>,
    pub majorant: &'a dyn Fn(u32) -> f64,
    pub ratio: &'a dyn Fn(u32) -> f64,
}

impl GeometricSeries<'_> {
    /// Rigorous bound on `Σ_{n>last} |term(n)|`.
    pub fn tail_bound(&self, last: u32) -> f64 {
        let q = (self.ratio)(last + 1);
        if q < 1.0 {
            (self.majorant)(last + 1) / (1.0 - q)
        } else {
            f64::INFINITY
        }
    }
}

/// Sums a [`GeometricSeries`] until the tail bound is below `tol/10`.
pub fn geometric_series(s: &GeometricSeries<'_>, tol: f64, cap: usize) -> Result<EvalResult> {
    let mut acc = NeumaierSum::new();
    let mut term_err = 0.0;
    let mut bound = f64::INFINITY;
    for n in (s.start..).take(cap) {
        let t = (s.term)(n)?;
        acc.add(t);
        term_err += TERM_REL_ERR * t.abs();
        bound = s.tail_bound(n);
        if bound <= 0.1 * tol {
            let err = bound + term_err + acc.rounding_bound();
            return Ok(EvalResult::new(acc.value(), err, acc.count(), s.id));
        }
    }
    Err(Error::ToleranceUnreachable {
        what: s.id.to_string(),
        tol,
        bound,
        max_terms: cap,
    })
}

/// A positive, eventually smooth series `Σ_{n≥1} f(n)` whose tail is summed
/// by Euler–Maclaurin. `tail_integrand(u)` must equal `f(1/u)/u²`.
pub struct SlowSeries<'a> {
    pub id: &'static str,
    pub f: &'a dyn Fn(f64) -> f64,
    pub df: &'a dyn Fn(f64) -> f64,
    pub tail_integrand: Integrand<'a>,
}

/// `Σ_{n<N} f(n) + ∫_N^∞ f + f(N)/2 - f'(N)/12`.
///
/// The neglected remainder is of order `f'''(N)/720`; for the power-log
/// terms used here `|f'(N)|/N²` dominates it and is charged as the bound.
pub fn slow_series(s: &SlowSeries<'_>, tol: f64, head: usize) -> Result<EvalResult> {
    if head < 2 {
        return Err(domain(s.id, head as f64, "head length >= 2"));
    }
    let n_big = head as f64;
    let mut acc = NeumaierSum::new();
    for n in 1..head {
        acc.add((s.f)(n as f64));
    }
    let quad_tol = (0.01 * tol).max(1e-12);
    let tail = integrate_finite(&s.tail_integrand, 0.0, 1.0 / n_big, quad_tol)?;
    let fn_ = (s.f)(n_big);
    let dfn = (s.df)(n_big);
    acc.add(tail.value);
    acc.add(0.5 * fn_);
    acc.add(-dfn / 12.0);
    let remainder = dfn.abs() / (n_big * n_big);
    let err =
        remainder + tail.err_estimate + 4.0 * f64::EPSILON * acc.abs_sum() + acc.rounding_bound();
    if err > 0.1 * tol {
        return Err(Error::ToleranceUnreachable {
            what: s.id.to_string(),
            tol,
            bound: err,
            max_terms: head,
        });
    }
    Ok(EvalResult::new(acc.value(), err, head, s.id))
}
