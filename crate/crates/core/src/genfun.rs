//! Power-series identities in `x` (and the Hurwitz parameter `a`), checked
//! pointwise and on grids.
//!
//! Every series here has the shape `Σ c_n ζ(n + δ, b) x^{n+e}` with weights
//! `c_n` among `1`, `1/n`, `H_n`, `H_n^-`. The bound
//! `ζ(s, b) ≤ b^{-s} + (b+1)^{-s}(s+b)/(s-1)` makes consecutive majorants
//! shrink by at least `|x|/b` (times `(1 + ln(n+1))/(1 + ln n)` for
//! harmonic weights), which drives the geometric truncation.
//!
//! The regularised series for [`GenfunId::Eq13`] is summed in split form,
//! using `ζ(n, a) - a^{-n} = ζ(n, a+1)`; each half then converges on
//! `|x| < a + 1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::constants::{EULER_GAMMA, LN_2, ZETA_2};
use crate::error::{Error, Result};
use crate::eval::{EvalResult, Status};
use crate::numerics::{digamma, hurwitz_zeta, log_gamma};
use crate::quadrature::{integrate_finite, Integrand};
use crate::series::{
    geometric_series, harmonic_bound, harmonic_bound_ratio, zeta_times_power, GeometricSeries,
    HarmonicTable,
};

/// Term budget per series. Grid points close to the disk edge converge
/// like `(|x|/b)^n` and legitimately need tens of thousands of terms.
pub const GENFUN_TERM_CAP: usize = 100_000;

/// Largest certified ratio at which the `k`-series of the Hurwitz
/// generating functions is evaluated.
pub const K_SERIES_MAX_RATIO: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GenfunId {
    /// `Σ_{n≥2} (ζ(n) - 1) x^{n-1} = 1 - γ - ψ(2-x)`
    Eq1,
    /// `Σ_{n≥2} (ζ(n) - 1) x^n/n = (1-γ)x + ln Γ(2-x)`
    Eq2,
    /// `Σ_{n≥1} (-1)^{n-1} ζ(n+1) x^n = ψ(1+x) + γ`
    Eq5,
    /// `Σ_{n≥2} H_n [ζ(n,a) - x ζ(n+1,a)] x^n = ζ(2,a)x² + ψ(a)x + ln Γ(a-x) - ln Γ(a)`
    Eq8,
    /// `Σ_{n≥2} ζ(n,a) x^n/n = ln Γ(a-x) - ln Γ(a) + ψ(a)x`
    Eq9,
    /// `Σ_{n≥2} H_n [ζ(n) - x ζ(n+1)] x^n = ζ(2)x² - γx + ln Γ(1-x)`
    Eq10,
    /// `Σ_{n≥2} H_n [ζ(n) - x ζ(n+1) + x - 1] x^n = ζ(2)x² - x² + (1-γ)x + ln Γ(2-x)`
    Eq11,
    /// `Σ_{n≥2} H_n [ζ(n,a) - x ζ(n+1,a) - (a-x)/a^{n+1}] x^n
    ///  = ζ(2,a)x² + ψ(a)x + (a-x)x/a² + ln Γ(a+1-x) - ln Γ(a+1)`
    Eq13,
    /// `Σ_{n≥1} ζ(n+1,a) x^n = ψ(a) - ψ(a-x)`
    Eq18,
    /// `Σ H_n ζ(n+1,a) x^n = Σ_k (-1)^{k-1} ζ(k+1,a-x) x^k/k
    ///  = ∫_0^x (ψ(a-x+t) - ψ(a-x))/t dt`
    Thm3Harmonic,
    /// `Σ H_n^- ζ(n+1,a) x^n = Σ_k (-1)^{k-1}(2^k-1) ζ(k+1,a-x) x^k/k
    ///  = ∫_0^x (ψ(a-x+2t) - ψ(a-x+t))/t dt`
    Thm3Skew,
}

/// Disk on which an identity holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RadiusRule {
    /// `|x| < a`
    A,
    /// `|x| < a + 1`
    APlusOne,
    /// `|x| < 1`
    One,
    /// `|x| < 2`
    Two,
}

impl RadiusRule {
    pub fn radius(self, a: f64) -> f64 {
        match self {
            RadiusRule::A => a,
            RadiusRule::APlusOne => a + 1.0,
            RadiusRule::One => 1.0,
            RadiusRule::Two => 2.0,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            RadiusRule::A => "|x| < a",
            RadiusRule::APlusOne => "|x| < a + 1",
            RadiusRule::One => "|x| < 1",
            RadiusRule::Two => "|x| < 2",
        }
    }
}

impl GenfunId {
    pub const ALL: [GenfunId; 11] = [
        GenfunId::Eq1,
        GenfunId::Eq2,
        GenfunId::Eq5,
        GenfunId::Eq8,
        GenfunId::Eq9,
        GenfunId::Eq10,
        GenfunId::Eq11,
        GenfunId::Eq13,
        GenfunId::Eq18,
        GenfunId::Thm3Harmonic,
        GenfunId::Thm3Skew,
    ];

    pub fn id(self) -> &'static str {
        match self {
            GenfunId::Eq1 => "eq1",
            GenfunId::Eq2 => "eq2",
            GenfunId::Eq5 => "eq5",
            GenfunId::Eq8 => "eq8",
            GenfunId::Eq9 => "eq9",
            GenfunId::Eq10 => "eq10",
            GenfunId::Eq11 => "eq11",
            GenfunId::Eq13 => "eq13",
            GenfunId::Eq18 => "eq18",
            GenfunId::Thm3Harmonic => "thm3.14",
            GenfunId::Thm3Skew => "thm3.15",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|g| g.id() == id)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn radius_rule(self) -> RadiusRule {
        match self {
            GenfunId::Eq1 | GenfunId::Eq2 | GenfunId::Eq11 => RadiusRule::Two,
            GenfunId::Eq5 | GenfunId::Eq10 => RadiusRule::One,
            GenfunId::Eq13 => RadiusRule::APlusOne,
            _ => RadiusRule::A,
        }
    }

    /// Identities without a free Hurwitz parameter are evaluated at this `a`.
    pub fn fixed_a(self) -> Option<f64> {
        match self {
            GenfunId::Eq1 | GenfunId::Eq2 | GenfunId::Eq11 => Some(2.0),
            GenfunId::Eq5 | GenfunId::Eq10 => Some(1.0),
            _ => None,
        }
    }

    /// The integral route needs `x > 0`.
    pub fn positive_x_only(self) -> bool {
        matches!(self, GenfunId::Thm3Harmonic | GenfunId::Thm3Skew)
    }
}

impl std::fmt::Display for GenfunId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Weight {
    One,
    InvN,
    Harmonic,
    Skew,
}

/// `Σ_{n≥start} ±c_n ζ(n + zeta_shift, b) x^{n + x_shift}`.
#[derive(Debug, Clone, Copy)]
struct ZetaPower {
    start: u32,
    b: f64,
    zeta_shift: u32,
    x_shift: i32,
    weight: Weight,
    alternating: bool,
}

/// `b^{-s} + (b+1)^{-s}(s+b)/(s-1)`, times `r^m`, in log space.
fn hurwitz_majorant(s: f64, b: f64, r: f64, m: f64) -> f64 {
    let lr = m * r.ln();
    (lr - s * b.ln()).exp() + (lr - s * (b + 1.0).ln()).exp() * (s + b) / (s - 1.0)
}

fn zeta_power_series(id: &'static str, p: ZetaPower, x: f64, tol: f64) -> Result<EvalResult> {
    let r = x.abs();
    if r == 0.0 {
        return Ok(EvalResult::new(0.0, 0.0, 0, id));
    }
    let table = HarmonicTable::new(p.weight == Weight::Skew);
    let weight = |n: u32| match p.weight {
        Weight::One => 1.0,
        Weight::InvN => 1.0 / n as f64,
        Weight::Harmonic | Weight::Skew => table.get(n),
    };
    let weight_bound = |n: u32| match p.weight {
        Weight::One | Weight::Skew => 1.0,
        Weight::InvN => 1.0 / n as f64,
        Weight::Harmonic => harmonic_bound(n),
    };
    let term = |n: u32| {
        let s = (n + p.zeta_shift) as f64;
        let sign = if p.alternating && n % 2 == 0 {
            -1.0
        } else {
            1.0
        };
        Ok(sign * weight(n) * zeta_times_power(s, p.b, x, n as i32 + p.x_shift)?)
    };
    let maj = |n: u32| {
        let s = (n + p.zeta_shift) as f64;
        weight_bound(n) * hurwitz_majorant(s, p.b, r, (n as i32 + p.x_shift) as f64)
    };
    let ratio = |m: u32| {
        let w = if p.weight == Weight::Harmonic {
            harmonic_bound_ratio(m)
        } else {
            1.0
        };
        w * r / p.b
    };
    let s = GeometricSeries {
        id,
        start: p.start,
        term: &term,
        majorant: &maj,
        ratio: &ratio,
    };
    geometric_series(&s, tol, GENFUN_TERM_CAP)
}

fn closed(value: Result<f64>) -> Result<EvalResult> {
    let v = value?;
    if !v.is_finite() {
        return Err(Error::Overflow {
            op: "closed form",
            value: v,
        });
    }
    // log-gamma and digamma are accurate to about 1e-15 relative
    Ok(EvalResult::new(
        v,
        1e-14 * v.abs().max(1.0),
        0,
        "closed-form",
    ))
}

fn difference(a: EvalResult, b: EvalResult, method: &'static str) -> EvalResult {
    EvalResult::new(
        a.value - b.value,
        a.err_bound + b.err_bound + f64::EPSILON * (a.value - b.value).abs(),
        a.terms_used + b.terms_used,
        method,
    )
}

/// `Σ_{n≥2} H_n ζ(n, b) x^n - Σ_{n≥2} H_n ζ(n+1, b) x^{n+1}`.
fn harmonic_difference(id: &'static str, b: f64, x: f64, tol: f64) -> Result<EvalResult> {
    let first = ZetaPower {
        start: 2,
        b,
        zeta_shift: 0,
        x_shift: 0,
        weight: Weight::Harmonic,
        alternating: false,
    };
    let second = ZetaPower {
        zeta_shift: 1,
        x_shift: 1,
        ..first
    };
    let lhs1 = zeta_power_series(id, first, x, 0.5 * tol)?;
    let lhs2 = zeta_power_series(id, second, x, 0.5 * tol)?;
    Ok(difference(lhs1, lhs2, id))
}

/// Result at one `(a, x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResult {
    pub id: String,
    pub a: f64,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub status: Status,
    /// Terms or nodes used on the left side.
    pub work: usize,
    /// Extra information, e.g. a route that was not evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PointResult {
    fn new(gid: GenfunId, a: f64, x: f64, lhs: EvalResult, rhs: EvalResult, tol: f64) -> Self {
        let abs_diff = (lhs.value - rhs.value).abs();
        Self {
            id: point_id(gid, a, x),
            a,
            x,
            lhs: lhs.value,
            rhs: rhs.value,
            abs_diff,
            tol,
            status: Status::from_check(abs_diff, tol),
            work: lhs.terms_used,
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }
}

fn point_id(gid: GenfunId, a: f64, x: f64) -> String {
    match gid.fixed_a() {
        Some(_) => format!("{}@x={}", gid.id(), x),
        None => format!("{}@a={},x={}", gid.id(), a, x),
    }
}

fn check_disk(gid: GenfunId, a: f64, x: f64) -> Result<()> {
    let rule = gid.radius_rule();
    let ok = a > 0.0 && a.is_finite() && x.is_finite() && x.abs() < rule.radius(a);
    if !ok {
        return Err(Error::DiskViolation {
            id: gid.id().to_string(),
            a,
            x,
            rule: rule.describe(),
        });
    }
    if gid.positive_x_only() && !(x > 0.0) {
        return Err(Error::DiskViolation {
            id: gid.id().to_string(),
            a,
            x,
            rule: "0 < x < a",
        });
    }
    Ok(())
}

/// Checks identity `gid` at one point. For identities without a free
/// parameter `a` is ignored (see [`GenfunId::fixed_a`]).
///
/// Points outside the identity's disk give [`Error::DiskViolation`].
pub fn check_point(gid: GenfunId, a: f64, x: f64, tol: f64) -> Result<PointResult> {
    let a = gid.fixed_a().unwrap_or(a);
    check_disk(gid, a, x)?;
    let stol = (0.1 * tol).max(1e-12);
    let id = gid.id();
    let (lhs, rhs) = match gid {
        GenfunId::Eq1 => {
            let p = ZetaPower {
                start: 2,
                b: 2.0,
                zeta_shift: 0,
                x_shift: -1,
                weight: Weight::One,
                alternating: false,
            };
            let lhs = zeta_power_series(id, p, x, stol)?;
            (
                lhs,
                closed(digamma(2.0 - x).map(|d| 1.0 - EULER_GAMMA - d))?,
            )
        }
        GenfunId::Eq2 => {
            let p = ZetaPower {
                start: 2,
                b: 2.0,
                zeta_shift: 0,
                x_shift: 0,
                weight: Weight::InvN,
                alternating: false,
            };
            let lhs = zeta_power_series(id, p, x, stol)?;
            (
                lhs,
                closed(log_gamma(2.0 - x).map(|l| (1.0 - EULER_GAMMA) * x + l))?,
            )
        }
        GenfunId::Eq5 => {
            let p = ZetaPower {
                start: 1,
                b: 1.0,
                zeta_shift: 1,
                x_shift: 0,
                weight: Weight::One,
                alternating: true,
            };
            let lhs = zeta_power_series(id, p, x, stol)?;
            (lhs, closed(digamma(1.0 + x).map(|d| d + EULER_GAMMA))?)
        }
        GenfunId::Eq8 => {
            let lhs = harmonic_difference(id, a, x, stol)?;
            let rhs = (|| -> Result<f64> {
                Ok(
                    hurwitz_zeta(2.0, a)? * x * x + digamma(a)? * x + log_gamma(a - x)?
                        - log_gamma(a)?,
                )
            })();
            (lhs, closed(rhs)?)
        }
        GenfunId::Eq9 => {
            let p = ZetaPower {
                start: 2,
                b: a,
                zeta_shift: 0,
                x_shift: 0,
                weight: Weight::InvN,
                alternating: false,
            };
            let lhs = zeta_power_series(id, p, x, stol)?;
            let rhs =
                (|| -> Result<f64> { Ok(log_gamma(a - x)? - log_gamma(a)? + digamma(a)? * x) })();
            (lhs, closed(rhs)?)
        }
        GenfunId::Eq10 => {
            let lhs = harmonic_difference(id, 1.0, x, stol)?;
            let rhs = log_gamma(1.0 - x).map(|l| ZETA_2 * x * x - EULER_GAMMA * x + l);
            (lhs, closed(rhs)?)
        }
        GenfunId::Eq11 => {
            // ζ(n) - x ζ(n+1) + x - 1 = ζ(n, 2) - x ζ(n+1, 2)
            let lhs = harmonic_difference(id, 2.0, x, stol)?;
            let rhs =
                log_gamma(2.0 - x).map(|l| ZETA_2 * x * x - x * x + (1.0 - EULER_GAMMA) * x + l);
            (lhs, closed(rhs)?)
        }
        GenfunId::Eq13 => {
            let lhs = harmonic_difference(id, a + 1.0, x, stol)?;
            let rhs = (|| -> Result<f64> {
                Ok(hurwitz_zeta(2.0, a)? * x * x
                    + digamma(a)? * x
                    + (a - x) * x / (a * a)
                    + log_gamma(a + 1.0 - x)?
                    - log_gamma(a + 1.0)?)
            })();
            (lhs, closed(rhs)?)
        }
        GenfunId::Eq18 => {
            let p = ZetaPower {
                start: 1,
                b: a,
                zeta_shift: 1,
                x_shift: 0,
                weight: Weight::One,
                alternating: false,
            };
            let lhs = zeta_power_series(id, p, x, stol)?;
            let rhs = (|| -> Result<f64> { Ok(digamma(a)? - digamma(a - x)?) })();
            (lhs, closed(rhs)?)
        }
        GenfunId::Thm3Harmonic | GenfunId::Thm3Skew => {
            let t = thm3_triple_check(a, x, gid == GenfunId::Thm3Skew, tol)?;
            return Ok(t.into_point());
        }
    };
    Ok(PointResult::new(gid, a, x, lhs, rhs, tol))
}

/// `x = -1` in the `a = 2` harmonic identity:
/// `Σ_{n≥2} (-1)^n H_n [ζ(n) + ζ(n+1) - 2] = ζ(2) + γ - 2 + ln 2`.
pub fn eq12_point_check(tol: f64) -> Result<PointResult> {
    let mut p = check_point(GenfunId::Eq11, 2.0, -1.0, tol)?;
    let rhs = ZETA_2 + EULER_GAMMA - 2.0 + LN_2;
    p.id = "eq12".into();
    p.rhs = rhs;
    p.abs_diff = (p.lhs - rhs).abs();
    p.status = Status::from_check(p.abs_diff, tol);
    Ok(p)
}

/// The three routes of the Hurwitz generating functions at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm3Report {
    pub id: &'static str,
    pub a: f64,
    pub x: f64,
    pub skew: bool,
    /// `Σ w_n ζ(n+1, a) x^n`
    pub series: EvalResult,
    /// `Σ_k (-1)^{k-1} c_k ζ(k+1, a-x) x^k/k`, when its tail can be certified.
    pub k_series: Option<EvalResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_series_skipped: Option<String>,
    pub integral: EvalResult,
    pub max_pairwise_diff: f64,
    pub tol: f64,
    pub status: Status,
}

impl Thm3Report {
    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    fn into_point(self) -> PointResult {
        let gid = if self.skew {
            GenfunId::Thm3Skew
        } else {
            GenfunId::Thm3Harmonic
        };
        PointResult {
            id: point_id(gid, self.a, self.x),
            a: self.a,
            x: self.x,
            lhs: self.series.value,
            rhs: self.integral.value,
            abs_diff: self.max_pairwise_diff,
            tol: self.tol,
            status: self.status,
            work: self.series.terms_used,
            note: self.k_series_skipped,
        }
    }
}

/// The `k`-series with `b = a - x`, split as
/// `ζ(k+1, b) = b^{-k-1} + ζ(k+1, b+1)`. The first part sums to a logarithm
/// wherever the series converges (`w x/b ≤ 1`, with `w = 2` for the skew
/// weights); the remainder has ratio `w x/(b+1)` and is only evaluated when
/// that is at most [`K_SERIES_MAX_RATIO`].
fn thm3_k_series(a: f64, x: f64, skew: bool, tol: f64) -> std::result::Result<EvalResult, String> {
    let b = a - x;
    let w = if skew { 2.0 } else { 1.0 };
    if w * x / b > 1.0 {
        return Err(format!(
            "k-series diverges: {w}·x/(a-x) = {} > 1",
            w * x / b
        ));
    }
    let rho = w * x / (b + 1.0);
    if rho > K_SERIES_MAX_RATIO {
        return Err(format!(
            "k-series tail not certifiable: ratio {rho} > {K_SERIES_MAX_RATIO}"
        ));
    }
    let log_part = if skew {
        ((2.0 * x / b).ln_1p() - (x / b).ln_1p()) / b
    } else {
        (x / b).ln_1p() / b
    };
    let term = |k: u32| {
        let kf = k as f64;
        let c = if skew { 2f64.powi(k as i32) - 1.0 } else { 1.0 };
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        Ok(sign * c * zeta_times_power(kf + 1.0, b + 1.0, x, k as i32)? / kf)
    };
    let maj = |k: u32| {
        let kf = k as f64;
        hurwitz_majorant(kf + 1.0, b + 1.0, w * x, kf) / kf
    };
    let ratio = |_| rho;
    let s = GeometricSeries {
        id: if skew { "thm3.15.k" } else { "thm3.14.k" },
        start: 1,
        term: &term,
        majorant: &maj,
        ratio: &ratio,
    };
    let rest = geometric_series(&s, tol, GENFUN_TERM_CAP).map_err(|e| e.to_string())?;
    Ok(rest.offset(log_part))
}

/// Three-way check of the Hurwitz generating functions at `0 < x < a`.
pub fn thm3_triple_check(a: f64, x: f64, skew: bool, tol: f64) -> Result<Thm3Report> {
    let gid = if skew {
        GenfunId::Thm3Skew
    } else {
        GenfunId::Thm3Harmonic
    };
    check_disk(gid, a, x)?;
    let stol = (0.1 * tol).max(1e-12);
    let p = ZetaPower {
        start: 1,
        b: a,
        zeta_shift: 1,
        x_shift: 0,
        weight: if skew { Weight::Skew } else { Weight::Harmonic },
        alternating: false,
    };
    let series = zeta_power_series(gid.id(), p, x, stol)?;

    let b = a - x;
    let psi = |t: f64| digamma(t).unwrap_or(f64::NAN);
    // both integrands tend to ψ'(b) = ζ(2, b) at t = 0
    let limit = hurwitz_zeta(2.0, b)?;
    let f = if skew {
        Integrand::new(move |t: f64| (psi(b + 2.0 * t) - psi(b + t)) / t)
    } else {
        Integrand::new(move |t: f64| (psi(b + t) - psi(b)) / t)
    }
    .removable(0.0, limit);
    let integral = integrate_finite(&f, 0.0, x, stol)?.into_eval("integral");

    let (k_series, k_series_skipped) = match thm3_k_series(a, x, skew, stol) {
        Ok(r) => (Some(r), None),
        Err(reason) => (None, Some(reason)),
    };
    let mut values = vec![series.value, integral.value];
    values.extend(k_series.map(|k| k.value));
    let mut max_pairwise_diff: f64 = 0.0;
    for (i, u) in values.iter().enumerate() {
        for v in &values[i + 1..] {
            let d = (u - v).abs();
            if !(d <= max_pairwise_diff) {
                max_pairwise_diff = if d.is_nan() { f64::INFINITY } else { d };
            }
        }
    }
    Ok(Thm3Report {
        id: gid.id(),
        a,
        x,
        skew,
        series,
        k_series,
        k_series_skipped,
        integral,
        max_pairwise_diff,
        tol,
        status: Status::from_check(max_pairwise_diff, tol),
    })
}

/// Parameter grid; `x = fraction × radius`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub a_values: Vec<f64>,
    pub x_fractions: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            a_values: vec![0.5, 1.0, 2.0, 3.7, 10.0],
            x_fractions: vec![-0.9, -0.5, -0.1, 0.1, 0.5, 0.9],
        }
    }
}

impl GridSpec {
    /// The `(a, x)` pairs for `gid`, in grid order. Identities without a
    /// free `a` get one row of points.
    pub fn points(&self, gid: GenfunId) -> Vec<(f64, f64)> {
        let a_values = match gid.fixed_a() {
            Some(a) => vec![a],
            None => self.a_values.clone(),
        };
        let mut out = Vec::new();
        for &a in &a_values {
            for &frac in &self.x_fractions {
                if gid.positive_x_only() && frac <= 0.0 {
                    continue;
                }
                out.push((a, frac * gid.radius_rule().radius(a)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum PointOutcome {
    Evaluated(PointResult),
    Skipped { a: f64, x: f64, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenfunReport {
    pub identity_id: &'static str,
    pub points: Vec<PointOutcome>,
    pub worst_pair: Option<(f64, f64)>,
    pub max_abs_diff: f64,
    pub tolerance: f64,
    pub status: Status,
}

impl GenfunReport {
    pub fn evaluated(&self) -> impl Iterator<Item = &PointResult> {
        self.points.iter().filter_map(|p| match p {
            PointOutcome::Evaluated(r) => Some(r),
            PointOutcome::Skipped { .. } => None,
        })
    }

    pub fn skipped_count(&self) -> usize {
        self.points.len() - self.evaluated().count()
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }
}

/// Runs `gid` over the grid in parallel. Points outside the disk are
/// reported as skipped; any other error aborts the run.
pub fn run_grid(gid: GenfunId, grid: &GridSpec, tol: f64) -> Result<GenfunReport> {
    let points = grid.points(gid);
    let outcomes: Vec<Result<PointOutcome>> = points
        .par_iter()
        .map(|&(a, x)| match check_point(gid, a, x, tol) {
            Ok(r) => Ok(PointOutcome::Evaluated(r)),
            Err(e @ Error::DiskViolation { .. }) => Ok(PointOutcome::Skipped {
                a,
                x,
                reason: e.to_string(),
            }),
            Err(e) => Err(e),
        })
        .collect();
    let points = outcomes.into_iter().collect::<Result<Vec<_>>>()?;

    let mut worst: Option<&PointResult> = None;
    let mut all_pass = true;
    for p in points.iter().filter_map(|p| match p {
        PointOutcome::Evaluated(r) => Some(r),
        _ => None,
    }) {
        all_pass &= p.passed();
        if worst.map_or(true, |w| !(p.abs_diff <= w.abs_diff)) {
            worst = Some(p);
        }
    }
    let (worst_pair, max_abs_diff) = match worst {
        Some(w) => (Some((w.a, w.x)), w.abs_diff),
        None => (None, 0.0),
    };
    Ok(GenfunReport {
        identity_id: gid.id(),
        worst_pair,
        max_abs_diff,
        tolerance: tol,
        status: if all_pass { Status::Pass } else { Status::Fail },
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{M1_REFERENCE, M_REFERENCE};

    #[test]
    fn ids_round_trip() {
        for g in GenfunId::ALL {
            assert_eq!(GenfunId::from_id(g.id()).unwrap(), g);
        }
        assert!(GenfunId::from_id("eq99").is_err());
    }

    #[test]
    fn origin_is_trivial() {
        for g in GenfunId::ALL {
            if g.positive_x_only() {
                continue;
            }
            let r = check_point(g, 2.0, 0.0, 1e-10).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.lhs.abs() < 1e-15);
        }
    }

    #[test]
    fn disk_is_enforced() {
        assert!(matches!(
            check_point(GenfunId::Eq8, 1.0, 1.0, 1e-9),
            Err(Error::DiskViolation { .. })
        ));
        assert!(check_point(GenfunId::Eq5, 7.0, 1.0, 1e-9).is_err());
        assert!(check_point(GenfunId::Thm3Harmonic, 2.0, -0.5, 1e-9).is_err());
        assert!(check_point(GenfunId::Eq13, 1.0, 1.5, 1e-9)
            .unwrap()
            .passed());
    }

    #[test]
    fn remark_endpoint_reproduces_constants() {
        let h = thm3_triple_check(2.0, 1.0, false, 1e-9).unwrap();
        assert!(h.passed(), "{h:?}");
        assert!(h.k_series.is_some());
        assert!((h.series.value - M_REFERENCE).abs() < 1e-9);
        let s = thm3_triple_check(2.0, 1.0, true, 1e-9).unwrap();
        assert!(s.passed(), "{s:?}");
        assert!(s.k_series_skipped.is_some());
        assert!((s.integral.value - M1_REFERENCE).abs() < 1e-9);
    }

    #[test]
    fn default_grid_passes() {
        for g in GenfunId::ALL {
            let r = run_grid(g, &GridSpec::default(), 1e-9).unwrap();
            assert!(r.passed(), "{g}: {:?}", r.worst_pair);
        }
    }

    #[test]
    fn near_edge_points_stay_finite() {
        let r = thm3_triple_check(2.0, 1.998, true, 1e-9).unwrap();
        assert!(r.series.value.is_finite());
        assert!(r.passed(), "{r:?}");
        assert!(r.k_series_skipped.is_some());
        let r = check_point(GenfunId::Eq13, 1.0, 1.98, 1e-9).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn eq12_instance() {
        let r = eq12_point_check(1e-9).unwrap();
        assert!((r.rhs - 0.915_296_912_309_704_6).abs() < 1e-15);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn consistency_with_fixed_parameter_forms() {
        for x in [-0.5, 0.3, 0.9] {
            let general = check_point(GenfunId::Eq8, 1.0, x, 1e-9).unwrap();
            let special = check_point(GenfunId::Eq10, 1.0, x, 1e-9).unwrap();
            assert!((general.lhs - special.lhs).abs() <= 1e-11);
            assert!((general.rhs - special.rhs).abs() <= 1e-11);
        }
        let general = check_point(GenfunId::Eq8, 2.0, 1.5, 1e-9).unwrap();
        let special = check_point(GenfunId::Eq11, 2.0, 1.5, 1e-9).unwrap();
        assert!((general.lhs - special.lhs).abs() <= 1e-11);
    }
}
