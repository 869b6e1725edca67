//! Summation by parts, Euler's series transformation, and the derivative
//! re-expansions of harmonic-weighted power series.
//!
//! The skew-harmonic integral representation used by [`skew_rep_check`] comes
//! from taking `f(t) = t^n` in
//! `Σ H_n^- a_n x^n = ∫_0^1 (f(x) - f(-xt))/(1+t) dt` and setting `x = 1`:
//! `H_n^- = ∫_0^1 (1 - (-t)^n)/(1+t) dt`.

use crate::constants::ZETA_2;
use crate::error::{Error, Result};
use crate::eval::{EvalResult, IdentityReport};
use crate::numerics::{harmonic, hurwitz_zeta, laguerre, skew_harmonic, zeta_minus_one};
use crate::quadrature::{integrate_finite, integrate_semi_infinite, ExpEnvelope, Integrand};
use crate::sum::NeumaierSum;

/// Rows of Pascal's triangle up to this index hold only integers below
/// `2^53`, so the floating-point recurrence is exact.
pub const BINOMIAL_EXACT_MAX: usize = 56;
/// Largest `n` accepted by [`euler_transform_coeffs`].
pub const EULER_TRANSFORM_CAP: usize = 1000;

/// Relative tolerance of the summation-by-parts check.
pub const ABEL_REL_TOL: f64 = 1e-12;

/// Real sequence indexed from `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSequence {
    start: i64,
    values: Vec<f64>,
}

impl FiniteSequence {
    pub fn new(start: i64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::IndexMismatch("sequence must be non-empty".into()));
        }
        Ok(Self { start, values })
    }

    /// `values[k - start]` for `k` in `start..=start + n - 1`.
    pub fn from_fn(start: i64, len: usize, f: impl Fn(i64) -> f64) -> Result<Self> {
        Self::new(start, (0..len as i64).map(|i| f(start + i)).collect())
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last index held.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn get(&self, k: i64) -> Option<f64> {
        if k < self.start {
            return None;
        }
        self.values.get((k - self.start) as usize).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Partial sums `A_k = a_p + … + a_k`.
pub fn abel_partial_sums(a: &FiniteSequence) -> Vec<f64> {
    let mut acc = NeumaierSum::new();
    a.values
        .iter()
        .map(|&v| {
            acc.add(v);
            acc.value()
        })
        .collect()
}

/// Checks `Σ_{k=p}^n a_k b_k = b_n A_n + Σ_{k=p}^{n-1} A_k (b_k - b_{k+1})`.
///
/// The tolerance is [`ABEL_REL_TOL`] relative to the sum of the absolute
/// values of all products involved.
pub fn abel_transform_check(
    a: &FiniteSequence,
    b: &FiniteSequence,
    n: i64,
) -> Result<IdentityReport> {
    let p = a.start();
    if b.start() != p {
        return Err(Error::IndexMismatch(format!(
            "sequences start at {} and {}",
            p,
            b.start()
        )));
    }
    if n <= p || a.end() < n || b.end() < n {
        return Err(Error::IndexMismatch(format!(
            "need p < n with both sequences defined on {p}..={n}"
        )));
    }
    let len = (n - p + 1) as usize;
    let av = &a.values[..len];
    let bv = &b.values[..len];
    let partial = abel_partial_sums(&FiniteSequence::new(p, av.to_vec())?);

    let lhs: NeumaierSum = av.iter().zip(bv).map(|(x, y)| x * y).collect();
    let mut rhs = NeumaierSum::new();
    rhs.add(bv[len - 1] * partial[len - 1]);
    for k in 0..len - 1 {
        rhs.add(partial[k] * (bv[k] - bv[k + 1]));
    }
    let scale = lhs.abs_sum() + rhs.abs_sum();
    let tol = ABEL_REL_TOL * scale.max(f64::MIN_POSITIVE);
    Ok(IdentityReport::new(
        "lemma2",
        EvalResult::new(lhs.value(), lhs.rounding_bound(), len, "abel.direct"),
        EvalResult::new(rhs.value(), rhs.rounding_bound(), len, "abel.by-parts"),
        tol,
    ))
}

/// Row `n` of Pascal's triangle, `C(n, 0..=n)`, by repeated addition.
pub fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for m in 1..=n {
        let mut next = vec![1.0; m + 1];
        for k in 1..m {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}

/// `b_n = Σ_{k=0}^n C(n, k) a_k`, the coefficients of `f(t/(1-t))/(1-t)`.
///
/// For alternating `a_k` of size O(1) the terms reach `C(n, n/2) ≈ 2^n`
/// while `b_n` stays small, so `b_n` carries an absolute rounding error of
/// order `2^n ε`. Callers that weight `b_n` by `2^{-n}` are unaffected.
pub fn euler_transform_coeffs(a: impl Fn(usize) -> f64, n: usize) -> Result<f64> {
    if n > EULER_TRANSFORM_CAP {
        return Err(Error::CapExceeded {
            what: "euler_transform_coeffs",
            n,
            cap: EULER_TRANSFORM_CAP,
        });
    }
    let row = binomial_row(n);
    Ok(row
        .iter()
        .enumerate()
        .map(|(k, c)| c * a(k))
        .collect::<NeumaierSum>()
        .value())
}

/// `a_k = (-1)^{k-1} ζ(k+1)` for `k ≥ 1`, `a_0 = 0`: the Taylor coefficients
/// of `ψ(1+x) + γ`.
pub fn digamma_taylor_coeffs(len: usize) -> Result<Vec<f64>> {
    let mut out = vec![0.0; len.max(1)];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let z = 1.0 + zeta_minus_one(k as u32 + 1)?;
        *slot = if k % 2 == 1 { z } else { -z };
    }
    Ok(out)
}

/// `Σ_{k=1}^n C(n,k) (-1)^{k-1} ζ(k+1) = ∫_0^∞ (1 - L_n(x))/(e^x - 1) dx`.
pub fn laguerre_binomial_check(n: usize, tol: f64) -> Result<IdentityReport> {
    if !(1..=12).contains(&n) {
        return Err(Error::Domain {
            op: "laguerre_binomial_check",
            value: n as f64,
            expected: "1 <= n <= 12",
        });
    }
    let coeffs = digamma_taylor_coeffs(n + 1)?;
    let lhs = euler_transform_coeffs(|k| coeffs[k], n)?;

    // |1 - L_n(x)| ≤ 1 + Σ_k C(n,k) x^k / k!
    let row = binomial_row(n);
    let mut poly = Vec::with_capacity(n + 1);
    let mut fact = 1.0;
    for (k, c) in row.iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        poly.push(c / fact + if k == 0 { 1.0 } else { 0.0 });
    }
    let f = Integrand::new(move |x: f64| (1.0 - laguerre(n, x)) / x.exp_m1())
        .removable(0.0, n as f64)
        .with_envelope(ExpEnvelope::polynomial(poly));
    let rhs = integrate_semi_infinite(&f, (0.1 * tol).max(1e-12))?;
    Ok(IdentityReport::new(
        format!("laguerre.identity@n={n}"),
        EvalResult::new(
            lhs,
            4.0 * f64::EPSILON * 2f64.powi(n as i32),
            n,
            "binomial-sum",
        ),
        rhs.into_eval("laguerre.integral"),
        tol,
    ))
}

const REP_TOL: f64 = 1e-10;

/// `H_n = ∫_0^1 (t^n - 1)/(t - 1) dt`.
pub fn harmonic_rep_check(n: u32) -> Result<IdentityReport> {
    rep_check(n, false)
}

/// `H_n^- = ∫_0^1 (1 - (-t)^n)/(1 + t) dt`.
pub fn skew_rep_check(n: u32) -> Result<IdentityReport> {
    rep_check(n, true)
}

fn rep_check(n: u32, skew: bool) -> Result<IdentityReport> {
    if !(1..=50).contains(&n) {
        return Err(Error::Domain {
            op: if skew {
                "skew_rep_check"
            } else {
                "harmonic_rep_check"
            },
            value: n as f64,
            expected: "1 <= n <= 50",
        });
    }
    let ni = n as i32;
    let (id, direct, quad) = if skew {
        let f = Integrand::new(move |t: f64| (1.0 - (-t).powi(ni)) / (1.0 + t));
        (
            format!("skewrep@n={n}"),
            skew_harmonic(n as u64),
            integrate_finite(&f, 0.0, 1.0, 0.1 * REP_TOL)?,
        )
    } else {
        let f =
            Integrand::new(move |t: f64| (t.powi(ni) - 1.0) / (t - 1.0)).removable(1.0, n as f64);
        (
            format!("hrep@n={n}"),
            harmonic(n as u64),
            integrate_finite(&f, 0.0, 1.0, 0.1 * REP_TOL)?,
        )
    };
    Ok(IdentityReport::new(
        id,
        quad.into_eval("integral"),
        EvalResult::new(
            direct,
            2.0 * f64::EPSILON * direct.abs(),
            n as usize,
            "direct",
        ),
        REP_TOL,
    ))
}

/// Scaled derivatives `f^{(k)}(x)/k!` of a power series `f(t) = Σ_{n≥1} a_n t^n`.
pub struct DerivativeOracle<'a> {
    scaled: Box<dyn Fn(usize, f64) -> f64 + 'a>,
    cap: usize,
    name: &'static str,
}

impl<'a> DerivativeOracle<'a> {
    pub fn new(name: &'static str, cap: usize, scaled: impl Fn(usize, f64) -> f64 + 'a) -> Self {
        Self {
            scaled: Box::new(scaled),
            cap,
            name,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `f^{(k)}(x)/k!` for `1 ≤ k ≤ cap`.
    pub fn scaled(&self, k: usize, x: f64) -> f64 {
        debug_assert!(k >= 1 && k <= self.cap);
        (self.scaled)(k, x)
    }
}

/// `f(t) = t/(1-t)`, so `a_n = 1` and `f^{(k)}(x)/k! = (1-x)^{-k-1}`.
pub fn geometric_oracle() -> DerivativeOracle<'static> {
    DerivativeOracle::new("geometric", 100_000, |k, x| (1.0 - x).powi(-(k as i32) - 1))
}

/// `f(t) = Σ ζ(n+1, a) t^n = ψ(a) - ψ(a-t)`, so
/// `f^{(k)}(x)/k! = ζ(k+1, a-x)`.
pub fn digamma_shift_oracle(a: f64) -> DerivativeOracle<'static> {
    DerivativeOracle::new("hurwitz", 100_000, move |k, x| {
        hurwitz_zeta(k as f64 + 1.0, a - x).unwrap_or(f64::NAN)
    })
}

#[allow(clippy::too_many_arguments)]
fn lemma3_check(
    id: &str,
    f: &DerivativeOracle<'_>,
    lhs: EvalResult,
    x: f64,
    terms: usize,
    tail_bound: f64,
    tol: f64,
    skew: bool,
) -> Result<IdentityReport> {
    if !(tail_bound < tol) {
        return Err(Error::TailBound {
            what: format!("{id} ({})", f.name()),
            bound: tail_bound,
            tol,
        });
    }
    if terms > f.cap() {
        return Err(Error::CapExceeded {
            what: "derivative oracle",
            n: terms,
            cap: f.cap(),
        });
    }
    let mut acc = NeumaierSum::new();
    let mut x_pow = 1.0;
    let mut two_pow = 1.0;
    for k in 1..=terms {
        x_pow *= x;
        two_pow *= 2.0;
        let weight = if skew { two_pow - 1.0 } else { 1.0 };
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc.add(sign * weight / k as f64 * x_pow * f.scaled(k, x));
    }
    let rhs = EvalResult::new(
        acc.value(),
        tail_bound + acc.rounding_bound(),
        terms,
        "lemma3.rhs",
    );
    Ok(IdentityReport::new(
        format!("{id}@f={},x={x}", f.name()),
        lhs,
        rhs,
        tol,
    ))
}

/// `Σ H_n a_n x^n = Σ_{k=1}^K (-1)^{k-1}/k · x^k f^{(k)}(x)/k!`, with the
/// caller's bound on the `k > K` tail.
pub fn lemma3_harmonic_check(
    f: &DerivativeOracle<'_>,
    series_lhs: EvalResult,
    x: f64,
    terms: usize,
    tail_bound: f64,
    tol: f64,
) -> Result<IdentityReport> {
    lemma3_check("lemma3.16", f, series_lhs, x, terms, tail_bound, tol, false)
}

/// As [`lemma3_harmonic_check`] with `H_n^-` and weights `2^k - 1`.
pub fn lemma3_skew_check(
    f: &DerivativeOracle<'_>,
    series_lhs: EvalResult,
    x: f64,
    terms: usize,
    tail_bound: f64,
    tol: f64,
) -> Result<IdentityReport> {
    lemma3_check("lemma3.17", f, series_lhs, x, terms, tail_bound, tol, true)
}

/// Terms needed for a geometric tail `ρ^{K+1} · c / ((K+1)(1-ρ))` to drop
/// below `target`, and the resulting bound.
fn geometric_terms(ratio: f64, scale: f64, target: f64, max_terms: usize) -> (usize, f64) {
    let mut k = 1;
    loop {
        let kp = (k + 1) as f64;
        let bound = scale * ratio.powf(kp) / (kp * (1.0 - ratio));
        if bound < target || k >= max_terms {
            return (k, bound);
        }
        k += 1;
    }
}

/// The weighted Taylor identity for `f(t) = t/(1-t)`; the left side is the closed generating
/// function `-ln(1-x)/(1-x)` (or `ln(1+x)/(1-x)` for the skew weights).
pub fn lemma3_geometric_check(x: f64, skew: bool, tol: f64) -> Result<IdentityReport> {
    let w = if skew { 2.0 } else { 1.0 };
    let ratio = w * x.abs() / (1.0 - x);
    if !(x < 1.0) || !(ratio < 1.0) {
        return Err(Error::DiskViolation {
            id: "lemma3.geometric".into(),
            a: 1.0,
            x,
            rule: if skew { "|x| < 1/3" } else { "|x| < 1/2" },
        });
    }
    let lhs_value = if skew {
        x.ln_1p() / (1.0 - x)
    } else {
        -(-x).ln_1p() / (1.0 - x)
    };
    let lhs = EvalResult::closed_form(lhs_value);
    let (terms, bound) = geometric_terms(ratio, 1.0 / (1.0 - x), 0.1 * tol, 100_000);
    let oracle = geometric_oracle();
    if skew {
        lemma3_skew_check(&oracle, lhs, x, terms, bound, tol)
    } else {
        lemma3_harmonic_check(&oracle, lhs, x, terms, bound, tol)
    }
}

/// The weighted Taylor identity for `f(t) = ψ(a) - ψ(a-t)`; the left side is the power series
/// `Σ H_n ζ(n+1, a) x^n` (or with `H_n^-`).
pub fn lemma3_zeta_check(a: f64, x: f64, skew: bool, tol: f64) -> Result<IdentityReport> {
    let w = if skew { 2.0 } else { 1.0 };
    let b = a - x;
    let ratio = w * x.abs() / b;
    if !(b > 0.0) || !(ratio < 1.0) {
        return Err(Error::DiskViolation {
            id: "lemma3.hurwitz".into(),
            a,
            x,
            rule: if skew { "2|x| < a - x" } else { "|x| < a - x" },
        });
    }
    let lhs = crate::series::harmonic_hurwitz_power_series(a, x, skew, 0.1 * tol)?;
    // ζ(k+1, b) ≤ b^{-k-1} (1 + (k+1+b)/k) ≤ b^{-k-1} (3 + b)
    let (terms, bound) = geometric_terms(ratio, (3.0 + b) / b, 0.1 * tol, 100_000);
    let oracle = digamma_shift_oracle(a);
    if skew {
        lemma3_skew_check(&oracle, lhs, x, terms, bound, tol)
    } else {
        lemma3_harmonic_check(&oracle, lhs, x, terms, bound, tol)
    }
}

/// `Σ_{n≥1} b_n/(n 2^n)` with `b_n = Σ_k C(n,k)(-1)^{k-1} ζ(k+1)`, truncated at
/// `n_max`. Used to confirm the transformed coefficients reproduce `M`.
pub fn euler_transformed_m_partial(n_max: usize) -> Result<f64> {
    let coeffs = digamma_taylor_coeffs(n_max + 1)?;
    let mut acc = NeumaierSum::new();
    let mut half_pow = 1.0;
    for n in 1..=n_max {
        half_pow *= 0.5;
        let b = euler_transform_coeffs(|k| coeffs[k], n)?;
        acc.add(b * half_pow / n as f64);
    }
    Ok(acc.value())
}

/// First binomial sum, `C(1,1) ζ(2)`.
pub fn first_transformed_coeff() -> f64 {
    ZETA_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abel_on_constant_sequences() {
        let a = FiniteSequence::new(1, vec![1.0; 3]).unwrap();
        let b = FiniteSequence::new(1, vec![1.0; 3]).unwrap();
        let r = abel_transform_check(&a, &b, 3).unwrap();
        assert_eq!(r.lhs.value, 3.0);
        assert_eq!(r.rhs.value, 3.0);
        assert!(r.passed());
    }

    #[test]
    fn abel_partial_sums_are_skew_harmonic() {
        let a = FiniteSequence::from_fn(1, 30, |k| {
            let v = 1.0 / k as f64;
            if k % 2 == 1 {
                v
            } else {
                -v
            }
        })
        .unwrap();
        for (i, s) in abel_partial_sums(&a).iter().enumerate() {
            assert!((s - skew_harmonic(i as u64 + 1)).abs() < 1e-15);
        }
    }

    #[test]
    fn abel_index_errors() {
        let a = FiniteSequence::new(1, vec![1.0; 3]).unwrap();
        let b = FiniteSequence::new(2, vec![1.0; 3]).unwrap();
        assert!(matches!(
            abel_transform_check(&a, &b, 3),
            Err(Error::IndexMismatch(_))
        ));
        let b = FiniteSequence::new(1, vec![1.0; 2]).unwrap();
        assert!(abel_transform_check(&a, &b, 3).is_err());
        assert!(abel_transform_check(&a, &a, 1).is_err());
        assert!(FiniteSequence::new(0, vec![]).is_err());
    }

    #[test]
    fn binomial_rows_are_exact() {
        assert_eq!(binomial_row(4), vec![1.0, 4.0, 6.0, 4.0, 1.0]);
        let row = binomial_row(BINOMIAL_EXACT_MAX);
        assert_eq!(row[28], 7_648_690_600_760_440.0);
        assert_eq!(
            row.iter().sum::<f64>(),
            2f64.powi(BINOMIAL_EXACT_MAX as i32)
        );
    }

    #[test]
    fn euler_transform_binomial_identities() {
        for n in 1..40 {
            let ones = euler_transform_coeffs(|k| if k == 0 { 0.0 } else { 1.0 }, n).unwrap();
            assert_eq!(ones, 2f64.powi(n as i32) - 1.0);
            let lin = euler_transform_coeffs(|k| k as f64, n).unwrap();
            assert_eq!(lin, n as f64 * 2f64.powi(n as i32 - 1));
        }
        assert!(euler_transform_coeffs(|_| 1.0, EULER_TRANSFORM_CAP + 1).is_err());
        assert!(euler_transform_coeffs(|_| 1.0, EULER_TRANSFORM_CAP)
            .unwrap()
            .is_finite());
    }

    #[test]
    fn first_laguerre_identity_is_zeta2() {
        let r = laguerre_binomial_check(1, 1e-9).unwrap();
        assert!((r.lhs.value - first_transformed_coeff()).abs() < 1e-15);
        assert!(r.passed(), "{r:?}");
        assert!(laguerre_binomial_check(13, 1e-8).is_err());
    }

    #[test]
    fn integral_representations() {
        for n in [1, 3, 50] {
            assert!(harmonic_rep_check(n).unwrap().passed());
            assert!(skew_rep_check(n).unwrap().passed());
        }
        let r = harmonic_rep_check(3).unwrap();
        assert!((r.lhs.value - 11.0 / 6.0).abs() < 1e-10);
        assert!(harmonic_rep_check(51).is_err());
    }

    #[test]
    fn lemma3_at_origin() {
        let lhs = EvalResult::closed_form(0.0);
        let r = lemma3_harmonic_check(&geometric_oracle(), lhs, 0.0, 5, 0.0, 1e-10).unwrap();
        assert_eq!(r.rhs.value, 0.0);
        assert!(r.passed());
        let r = lemma3_skew_check(&geometric_oracle(), lhs, 0.0, 5, 0.0, 1e-10).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn lemma3_rejects_large_tail() {
        let lhs = EvalResult::closed_form(0.0);
        let err = lemma3_harmonic_check(&geometric_oracle(), lhs, 0.3, 2, 1e-3, 1e-10);
        assert!(matches!(err, Err(Error::TailBound { .. })));
    }

    #[test]
    fn lemma3_geometric_points() {
        for x in [0.1, 0.3, 0.45] {
            let r = lemma3_geometric_check(x, false, 1e-10).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        for x in [0.05, 0.15, 0.3] {
            let r = lemma3_geometric_check(x, true, 1e-10).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(lemma3_geometric_check(0.4, true, 1e-10).is_err());
    }

    #[test]
    fn lemma3_hurwitz_points() {
        for x in [0.25, 0.5, 0.8] {
            let r = lemma3_zeta_check(2.0, x, false, 1e-10).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        for x in [0.2, 0.4, 0.6] {
            let r = lemma3_zeta_check(2.0, x, true, 1e-10).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(lemma3_zeta_check(2.0, 0.7, true, 1e-10).is_err());
    }

    #[test]
    fn transformed_coefficients_rebuild_m() {
        let m = euler_transformed_m_partial(60).unwrap();
        assert!((m - crate::constants::M_REFERENCE).abs() < 1e-12);
    }
}
