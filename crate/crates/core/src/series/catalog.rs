use std::cell::RefCell;

use super::{
    check_tol, geometric_series, slow_series, GeometricSeries, SeriesConfig, SeriesMethod,
    SlowSeries,
};
use crate::constants::{EULER_GAMMA, LN_2, ZETA_2};
use crate::error::{domain, Error, Result};
use crate::eval::{EvalResult, IdentityReport};
use crate::numerics::{hurwitz_zeta, skew_harmonic, zeta_minus_one, zeta_prime};
use crate::quadrature::Integrand;
use crate::sum::NeumaierSum;
use crate::transforms::{digamma_taylor_coeffs, euler_transform_coeffs};

/// `ζ(s, b) x^m`, switching to log space when either factor leaves the
/// double range (large `s` with `|x|` close to `b`).
pub(crate) fn zeta_times_power(s: f64, b: f64, x: f64, m: i32) -> Result<f64> {
    let z = hurwitz_zeta(s, b)?;
    let p = x.powi(m);
    if z >= f64::MIN_POSITIVE && p.is_finite() && (p.abs() >= f64::MIN_POSITIVE || x == 0.0) {
        return Ok(z * p);
    }
    let lr = m as f64 * x.abs().ln();
    let sign = if x < 0.0 && m % 2 != 0 { -1.0 } else { 1.0 };
    let mut acc = NeumaierSum::new();
    for j in 0..10_000 {
        let t = (lr - s * (b + j as f64).ln()).exp();
        acc.add(t);
        // Σ_{i>j} (b+i)^{-s} ≤ (b+j)^{1-s}/(s-1)
        if t * (b + j as f64) / (s - 1.0) <= 1e-17 * acc.value() || acc.value() == 0.0 && t == 0.0 {
            break;
        }
    }
    Ok(sign * acc.value())
}

use SeriesMethod::*;

pub const M_METHODS: [SeriesMethod; 8] = [
    AlternatingZeta,
    LogReciprocal,
    LogOverPronic,
    HarmonicZetaTail,
    HarmonicZetaTailShifted,
    ZetaBlock,
    SkewHarmonicZetaStep,
    BinomialTransform,
];

pub const M1_METHODS: [SeriesMethod; 3] = [
    LogShiftedReciprocal,
    SkewHarmonicZetaTail,
    AlternatingZetaBlock,
];

pub const FIXED_IDENTITIES: [SeriesMethod; 7] = [
    ZetaTailSum,
    ZetaTailOverN,
    AlternatingZetaOverN,
    SkewHarmonicSteps,
    HarmonicSteps,
    AlternatingHarmonicPairs,
    ZetaTailByParts,
];

/// Tolerance of the partial-sum telescoping check.
pub const PROP1_TOL: f64 = 1e-10;

/// Largest `n` for which the binomial-transform route builds `b_n`.
const BINOMIAL_ROUTE_CAP: usize = 200;

/// `2^{-n}(n+1)/(n-1)`, an upper bound for `ζ(n) - 1` and for `S_n`, `n ≥ 2`.
pub fn zeta_tail_majorant(n: u32) -> f64 {
    debug_assert!(n >= 2);
    let n = n as f64;
    0.5f64.powf(n) * (n + 1.0) / (n - 1.0)
}

/// Upper bound for `S_n`, `n ≥ 2`.
pub fn s_n_upper_bound(n: u32) -> f64 {
    zeta_tail_majorant(n)
}

fn zm1(n: u32) -> Result<f64> {
    zeta_minus_one(n)
}

fn alt(n: u32) -> f64 {
    if n % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `1 + ln n ≥ H_n`.
pub(crate) fn harmonic_bound(n: u32) -> f64 {
    1.0 + (n as f64).ln()
}

/// Bound on `(1 + ln(n+1))/(1 + ln n)` for `n ≥ m`.
pub(crate) fn harmonic_bound_ratio(m: u32) -> f64 {
    let m = m.max(1) as f64;
    1.0 + 1.0 / (m * (1.0 + m.ln()))
}

fn half(_: u32) -> f64 {
    0.5
}

fn harmonic_half(m: u32) -> f64 {
    0.5 * harmonic_bound_ratio(m)
}

/// Harmonic numbers built incrementally, for terms requested in order.
pub(crate) struct HarmonicTable {
    skew: bool,
    values: RefCell<Vec<f64>>,
}

impl HarmonicTable {
    pub(crate) fn new(skew: bool) -> Self {
        Self {
            skew,
            values: RefCell::new(vec![0.0]),
        }
    }

    pub(crate) fn get(&self, n: u32) -> f64 {
        let mut v = self.values.borrow_mut();
        while v.len() <= n as usize {
            let k = v.len() as f64;
            let step = if self.skew && v.len() % 2 == 0 {
                -1.0 / k
            } else {
                1.0 / k
            };
            let last = *v.last().unwrap();
            v.push(last + step);
        }
        v[n as usize]
    }
}

/// `S_n = Σ_{k≥2} 1/(k^n (k-1))`, summed directly.
///
/// Terms up to `k = 64` are added one by one, stopping once the integral-test
/// bound `k^{-n}/(n-1)` on the rest is negligible; beyond that the expansion
/// `1/(k-1) = Σ_{j≥1} k^{-j}` turns the tail into `Σ_j ζ(n+j, 65)`.
/// `S_1 = 1` (the sum telescopes). `n = 0` diverges and returns infinity.
pub fn s_n(n: u32) -> f64 {
    const DIRECT: u32 = 64;
    match n {
        0 => return f64::INFINITY,
        1 => return 1.0,
        _ => {}
    }
    let nf = n as f64;
    let mut acc = NeumaierSum::new();
    for k in 2..=DIRECT {
        let kf = k as f64;
        let kp = kf.powf(-nf);
        acc.add(kp / (kf - 1.0));
        if kp / (nf - 1.0) <= 1e-17 * acc.value() {
            return acc.value();
        }
    }
    let base = (DIRECT + 1) as f64;
    for j in 1..200 {
        let z = hurwitz_zeta(nf + j as f64, base).unwrap_or(0.0);
        acc.add(z);
        if z <= 1e-17 * acc.value() {
            break;
        }
    }
    acc.value()
}

/// `n - ζ(2) - ζ(3) - … - ζ(n)` evaluated literally. Loses all precision once
/// `S_n` drops below about `n·ε`; kept only as a comparison.
pub fn s_n_by_zeta_subtraction(n: u32) -> Result<f64> {
    let mut v = n as f64;
    for j in 2..=n {
        v -= 1.0 + zm1(j)?;
    }
    Ok(v)
}

fn s_n_majorant(n: u32) -> f64 {
    if n == 1 {
        1.0
    } else {
        zeta_tail_majorant(n) / n as f64
    }
}

fn geometric(
    id: &'static str,
    start: u32,
    term: &dyn Fn(u32) -> Result<f64>,
    majorant: &dyn Fn(u32) -> f64,
    ratio: &dyn Fn(u32) -> f64,
    tol: f64,
    cfg: &SeriesConfig,
) -> Result<EvalResult> {
    let s = GeometricSeries {
        id,
        start,
        term,
        majorant,
        ratio,
    };
    geometric_series(&s, tol, cfg.geometric_cap)
}

fn slow(
    id: &'static str,
    f: &dyn Fn(f64) -> f64,
    df: &dyn Fn(f64) -> f64,
    tail: Integrand<'_>,
    tol: f64,
    cfg: &SeriesConfig,
) -> Result<EvalResult> {
    let s = SlowSeries {
        id,
        f,
        df,
        tail_integrand: tail,
    };
    slow_series(&s, tol, cfg.slow_terms)
}

/// `M` by the chosen route, with `err_bound ≤ tol`.
pub fn m_series(method: SeriesMethod, tol: f64) -> Result<EvalResult> {
    m_series_with(method, tol, &SeriesConfig::default())
}

pub fn m_series_with(method: SeriesMethod, tol: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    check_tol("m_series", tol)?;
    let id = method.id();
    match method {
        AlternatingZeta => {
            // ln 2 + Σ (-1)^{n-1} (ζ(n+1) - 1)/n
            let term = |n: u32| Ok(alt(n) * zm1(n + 1)? / n as f64);
            let maj = |n: u32| zeta_tail_majorant(n + 1) / n as f64;
            Ok(geometric(id, 1, &term, &maj, &half, tol, cfg)?.offset(LN_2))
        }
        LogReciprocal => {
            let f = |t: f64| (1.0 / t).ln_1p() / t;
            let df = |t: f64| -(1.0 / t).ln_1p() / (t * t) - 1.0 / (t * t * (t + 1.0));
            let tail = Integrand::new(|u: f64| u.ln_1p() / u).removable(0.0, 1.0);
            slow(id, &f, &df, tail, tol, cfg)
        }
        LogOverPronic => {
            let f = |t: f64| t.ln_1p() / (t * (t + 1.0));
            let df = |t: f64| {
                let tp = t + 1.0;
                1.0 / (t * tp * tp) - t.ln_1p() * (2.0 * t + 1.0) / (t * t * tp * tp)
            };
            let tail =
                Integrand::new(|u: f64| (u.ln_1p() - u.ln()) / (1.0 + u)).singular_at_lower();
            slow(id, &f, &df, tail, tol, cfg)
        }
        HarmonicZetaTail => {
            let h = HarmonicTable::new(false);
            let term = |n: u32| Ok(h.get(n) * zm1(n + 1)?);
            let maj = |n: u32| harmonic_bound(n) * zeta_tail_majorant(n + 1);
            geometric(id, 1, &term, &maj, &harmonic_half, tol, cfg)
        }
        HarmonicZetaTailShifted => {
            // Σ_{n≥2} H_n (ζ(n) - 1) = M + 1 - γ
            let h = HarmonicTable::new(false);
            let term = |n: u32| Ok(h.get(n) * zm1(n)?);
            let maj = |n: u32| harmonic_bound(n) * zeta_tail_majorant(n);
            Ok(geometric(id, 2, &term, &maj, &harmonic_half, tol, cfg)?.offset(EULER_GAMMA - 1.0))
        }
        ZetaBlock => {
            let term = |n: u32| Ok(s_n(n) / n as f64);
            geometric(id, 1, &term, &s_n_majorant, &half, tol, cfg)
        }
        SkewHarmonicZetaStep => {
            // Σ H_n^- (ζ(n+1) - ζ(n+2)) = M - ln 2
            let h = HarmonicTable::new(true);
            let term = |n: u32| Ok(h.get(n) * (zm1(n + 1)? - zm1(n + 2)?));
            let maj = |n: u32| zeta_tail_majorant(n + 1);
            Ok(geometric(id, 1, &term, &maj, &half, tol, cfg)?.offset(LN_2))
        }
        BinomialTransform => binomial_route(tol, cfg),
        _ => Err(Error::UnknownId(format!("{id} is not a series for M"))),
    }
}

/// `Σ b_n/(n 2^n)` with `b_n = Σ_m (1 - (1 - 1/m)^n)/m ∈ (0, 2 + ln n]`.
///
/// `b_n` is a sum of terms as large as `C(n, n/2) ζ(2)` with heavy
/// cancellation, so it carries an absolute rounding error near
/// `2^n ζ(2) ε`. The weight `1/(n 2^n)` scales that back to `ζ(2) ε/n`,
/// which is what the error bound charges per term.
fn binomial_route(tol: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    let id = BinomialTransform.id();
    let coeffs = digamma_taylor_coeffs(BINOMIAL_ROUTE_CAP + 1)?;
    let term = |n: u32| {
        let n = n as usize;
        if n > BINOMIAL_ROUTE_CAP {
            return Err(Error::CapExceeded {
                what: "binomial transform route",
                n,
                cap: BINOMIAL_ROUTE_CAP,
            });
        }
        let b = euler_transform_coeffs(|k| coeffs[k], n)?;
        Ok(b * 0.5f64.powi(n as i32) / n as f64)
    };
    let maj = |n: u32| (2.0 + (n as f64).ln()) * 0.5f64.powi(n as i32) / n as f64;
    let ratio = |m: u32| {
        let m = m as f64;
        0.5 * (1.0 + 1.0 / (m * (2.0 + m.ln())))
    };
    let r = geometric(id, 1, &term, &maj, &ratio, tol, cfg)?;
    let n = r.terms_used as f64;
    let cancellation = 4.0 * ZETA_2 * f64::EPSILON * (1.0 + n.ln());
    Ok(EvalResult {
        err_bound: r.err_bound + cancellation,
        ..r
    })
}

/// `M₁` by the chosen route, with `err_bound ≤ tol`.
pub fn m1_series(method: SeriesMethod, tol: f64) -> Result<EvalResult> {
    m1_series_with(method, tol, &SeriesConfig::default())
}

pub fn m1_series_with(method: SeriesMethod, tol: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    check_tol("m1_series", tol)?;
    let id = method.id();
    match method {
        LogShiftedReciprocal => {
            let g = |t: f64| (1.0 / (t + 1.0)).ln_1p();
            let f = |t: f64| g(t) / t;
            let df = |t: f64| -1.0 / ((t + 1.0) * (t + 2.0) * t) - g(t) / (t * t);
            let tail = Integrand::new(|u: f64| (u / (1.0 + u)).ln_1p() / u).removable(0.0, 1.0);
            slow(id, &f, &df, tail, tol, cfg)
        }
        SkewHarmonicZetaTail => {
            let h = HarmonicTable::new(true);
            let term = |n: u32| Ok(h.get(n) * zm1(n + 1)?);
            let maj = |n: u32| zeta_tail_majorant(n + 1);
            geometric(id, 1, &term, &maj, &half, tol, cfg)
        }
        AlternatingZetaBlock => {
            let term = |n: u32| Ok(alt(n) * s_n(n) / n as f64);
            geometric(id, 1, &term, &s_n_majorant, &half, tol, cfg)
        }
        _ => Err(Error::UnknownId(format!("{id} is not a series for M1"))),
    }
}

/// Series identity with a closed right-hand side (or, for `remark1`, two
/// series on both sides).
pub fn fixed_identity(method: SeriesMethod, tol: f64) -> Result<IdentityReport> {
    check_tol("fixed_identity", tol)?;
    let cfg = SeriesConfig::default();
    let id = method.id();
    let closed = EvalResult::closed_form;
    let (lhs, rhs) = match method {
        ZetaTailSum => {
            let term = |n: u32| zm1(n);
            let lhs = geometric(id, 2, &term, &zeta_tail_majorant, &half, tol, &cfg)?;
            (lhs, closed(1.0))
        }
        ZetaTailOverN => {
            let term = |n: u32| Ok(zm1(n)? / n as f64);
            let maj = |n: u32| zeta_tail_majorant(n) / n as f64;
            let lhs = geometric(id, 2, &term, &maj, &half, tol, &cfg)?;
            (lhs, closed(1.0 - EULER_GAMMA))
        }
        AlternatingZetaOverN => {
            // Σ_{n≥2} (-1)^n/n = 1 - ln 2 is split off exactly.
            let term = |n: u32| Ok(-alt(n) * zm1(n)? / n as f64);
            let maj = |n: u32| zeta_tail_majorant(n) / n as f64;
            let lhs = geometric(id, 2, &term, &maj, &half, tol, &cfg)?.offset(1.0 - LN_2);
            (lhs, closed(EULER_GAMMA))
        }
        SkewHarmonicSteps => {
            let h = HarmonicTable::new(true);
            let term = |n: u32| Ok(h.get(n) * (zm1(n)? - zm1(n + 1)?));
            let lhs = geometric(id, 2, &term, &zeta_tail_majorant, &half, tol, &cfg)?;
            (lhs, closed(ZETA_2 - EULER_GAMMA - LN_2))
        }
        HarmonicSteps => {
            let h = HarmonicTable::new(false);
            let term = |n: u32| Ok(h.get(n) * (zm1(n)? - zm1(n + 1)?));
            let maj = |n: u32| harmonic_bound(n) * zeta_tail_majorant(n);
            let lhs = geometric(id, 2, &term, &maj, &harmonic_half, tol, &cfg)?;
            (lhs, closed(ZETA_2 - EULER_GAMMA))
        }
        AlternatingHarmonicPairs => {
            let h = HarmonicTable::new(false);
            let term = |n: u32| Ok(-alt(n) * h.get(n) * (zm1(n)? + zm1(n + 1)?));
            let maj = |n: u32| 2.0 * harmonic_bound(n) * zeta_tail_majorant(n);
            let lhs = geometric(id, 2, &term, &maj, &harmonic_half, tol, &cfg)?;
            (lhs, closed(ZETA_2 + EULER_GAMMA - 2.0 + LN_2))
        }
        ZetaTailByParts => {
            let term = |k: u32| Ok(zm1(k + 1)? / k as f64);
            let maj = |k: u32| zeta_tail_majorant(k + 1) / k as f64;
            let lhs = geometric(id, 1, &term, &maj, &half, tol, &cfg)?;
            let h = HarmonicTable::new(false);
            let term = |k: u32| Ok(h.get(k) * (zm1(k + 1)? - zm1(k + 2)?));
            let maj = |k: u32| harmonic_bound(k) * zeta_tail_majorant(k + 1);
            let rhs = geometric(id, 1, &term, &maj, &harmonic_half, tol, &cfg)?;
            (lhs, rhs)
        }
        _ => return Err(Error::UnknownId(format!("{id} is not a fixed identity"))),
    };
    Ok(IdentityReport::new(id, lhs, rhs, tol))
}

/// `Σ_{n=2}^m H_n^- (ζ(n) - ζ(n+1))` against its telescoped form
/// `ζ(2)/2 - H^-_{m+1}(ζ(m+1) - 1) - H^-_{m+1} + Σ_{n=2}^m (-1)^n ζ(n+1)/(n+1)`.
pub fn prop1_partial_sum_check(m: u32) -> Result<IdentityReport> {
    if m < 2 {
        return Err(domain("prop1_partial_sum_check", m as f64, "m >= 2"));
    }
    let mut lhs = NeumaierSum::new();
    let mut alt_sum = NeumaierSum::new();
    for n in 2..=m {
        lhs.add(skew_harmonic(n as u64) * (zm1(n)? - zm1(n + 1)?));
        alt_sum.add(-alt(n) * (1.0 + zm1(n + 1)?) / (n + 1) as f64);
    }
    let h = skew_harmonic(m as u64 + 1);
    let mut rhs = NeumaierSum::new();
    rhs.add(0.5 * ZETA_2);
    rhs.add(-h * zm1(m + 1)?);
    rhs.add(-h);
    rhs.add(alt_sum.value());
    let terms = (m - 1) as usize;
    Ok(IdentityReport::new(
        format!("prop1@m={m}"),
        EvalResult::new(lhs.value(), lhs.rounding_bound(), terms, "prop1.partial"),
        EvalResult::new(
            rhs.value(),
            rhs.rounding_bound() + alt_sum.rounding_bound(),
            terms,
            "prop1.telescoped",
        ),
        PROP1_TOL,
    ))
}

/// `Σ ln(n+1)/n^p = -ζ'(p) + Σ_k (-1)^{k-1} ζ(p+k)/k`.
pub fn prop2_check(p: f64, tol: f64) -> Result<IdentityReport> {
    prop2_check_with(p, tol, &SeriesConfig::default())
}

pub fn prop2_check_with(p: f64, tol: f64, cfg: &SeriesConfig) -> Result<IdentityReport> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(domain("prop2_check", p, "p > 1"));
    }
    check_tol("prop2_check", tol)?;
    let f = |t: f64| t.ln_1p() * t.powf(-p);
    let df = |t: f64| t.powf(-p) / (t + 1.0) - p * t.ln_1p() * t.powf(-p - 1.0);
    let tail =
        Integrand::new(move |u: f64| (u.ln_1p() - u.ln()) * u.powf(p - 2.0)).singular_at_lower();
    let lhs = slow("prop2.lhs", &f, &df, tail, tol, cfg)?;

    // Σ_k (-1)^{k-1} ζ(p+k)/k = ln 2 + Σ_k (-1)^{k-1} ζ(p+k, 2)/k
    let term = |k: u32| Ok(alt(k) * hurwitz_zeta(p + k as f64, 2.0)? / k as f64);
    let maj = |k: u32| {
        let s = p + k as f64;
        (2f64.powf(-s) + 3f64.powf(-s) * (s + 2.0) / (s - 1.0)) / k as f64
    };
    let series = geometric("prop2.rhs", 1, &term, &maj, &half, tol, cfg)?;
    let zp = zeta_prime(p)?;
    let rhs = series.offset(LN_2 - zp);
    let rhs = EvalResult {
        err_bound: rhs.err_bound + 16.0 * f64::EPSILON * zp.abs(),
        ..rhs
    };
    Ok(IdentityReport::new(format!("prop2@p={p}"), lhs, rhs, tol))
}

/// `Σ_{n≥1} w_n ζ(n+1, a) x^n` with `w_n = H_n` or `H_n^-`, for `|x| < a`.
pub fn harmonic_hurwitz_power_series(a: f64, x: f64, skew: bool, tol: f64) -> Result<EvalResult> {
    if !(a > 0.0) || !(x.abs() < a) {
        return Err(Error::DiskViolation {
            id: "hurwitz.power".into(),
            a,
            x,
            rule: "|x| < a",
        });
    }
    let tol = tol.max(1e-12);
    let h = HarmonicTable::new(skew);
    let rho = x.abs() / a;
    let term = |n: u32| Ok(h.get(n) * zeta_times_power(n as f64 + 1.0, a, x, n as i32)?);
    let maj = |n: u32| {
        let nf = n as f64;
        let w = if skew { 1.0 } else { harmonic_bound(n) };
        let near = rho.powf(nf) / a;
        let far = (x.abs() / (a + 1.0)).powf(nf) / (a + 1.0) * (nf + 1.0 + a) / nf;
        w * (near + far)
    };
    let ratio = |m: u32| {
        if skew {
            rho
        } else {
            rho * harmonic_bound_ratio(m)
        }
    };
    let id = if skew {
        "hurwitz.power.skew"
    } else {
        "hurwitz.power"
    };
    geometric(id, 1, &term, &maj, &ratio, tol, &SeriesConfig::default())
}
