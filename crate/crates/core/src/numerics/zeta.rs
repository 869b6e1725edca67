use super::bernoulli_over_factorial;
use crate::error::{domain, Error, Result};
use crate::sum::NeumaierSum;

/// Hurwitz zeta value together with its `s`-derivative and an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HurwitzEval {
    pub value: f64,
    /// `∂ζ(s, a)/∂s`
    pub ds: f64,
    /// Bound on the truncation plus rounding error of `value`.
    pub err_bound: f64,
    /// Number of directly summed terms.
    pub terms: usize,
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^{-s}` for `s > 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    hurwitz_zeta_with_error(s, a).map(|e| e.value)
}

/// Like [`hurwitz_zeta`] but also reports the derivative in `s` and the error bound.
pub fn hurwitz_zeta_with_error(s: f64, a: f64) -> Result<HurwitzEval> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain("hurwitz_zeta", s, "s > 1"));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("hurwitz_zeta", a, "a > 0"));
    }
    Ok(euler_maclaurin(s, a))
}

/// `ζ(n) - 1 = Σ_{k≥2} k^{-n}`, summed directly so that the result keeps full
/// relative precision even where it is close to `2^{-n}`.
///
/// Underflows to zero once `2^{-n}` leaves the double range (`n > 1074`).
pub fn zeta_minus_one(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain {
            op: "zeta_minus_one",
            value: n as f64,
            expected: "n >= 2",
        });
    }
    Ok(euler_maclaurin(n as f64, 2.0).value)
}

/// Derivative of the Riemann zeta function, `ζ'(p) = -Σ ln n · n^{-p}`, for `p > 1`.
pub fn zeta_prime(p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(domain("zeta_prime", p, "p > 1"));
    }
    Ok(euler_maclaurin(p, 1.0).ds)
}

// Direct summation up to X = N + a, then Euler–Maclaurin for the remainder:
//
//   Σ_{k≥N} (k+a)^{-s} = X^{1-s}/(s-1) + X^{-s}/2 + Σ_j B_{2j}/(2j)! · (s)_{2j-1} · X^{-s-2j+1}
//
// The base grows with s so that the correction terms keep shrinking through
// B_30. For large s the direct sum usually terminates first, once the
// integral-test remainder is below 1e-17 of the partial sum.
fn euler_maclaurin(s: f64, a: f64) -> HurwitzEval {
    let base = (0.5 * s + 15.0).max(10.0);
    let mut sum = NeumaierSum::new();
    let mut dsum = NeumaierSum::new();
    let mut k = 0usize;
    loop {
        let x = k as f64 + a;
        if x >= base {
            break;
        }
        let t = x.powf(-s);
        sum.add(t);
        dsum.add(-x.ln() * t);
        k += 1;

        let next = k as f64 + a;
        let remainder = next.powf(-s) * (1.0 + next / (s - 1.0));
        if remainder <= 1e-17 * sum.value() {
            return HurwitzEval {
                value: sum.value(),
                ds: dsum.value(),
                err_bound: remainder + sum.rounding_bound(),
                terms: k,
            };
        }
    }

    let x = k as f64 + a;
    let ln_x = x.ln();
    let x_pow = x.powf(-s);

    let integral = x * x_pow / (s - 1.0);
    sum.add(integral);
    dsum.add(-ln_x * integral - integral / (s - 1.0));
    let endpoint = 0.5 * x_pow;
    sum.add(endpoint);
    dsum.add(-ln_x * endpoint);

    // (s)_{2j-1} = s (s+1) … (s+2j-2) and its log-derivative Σ 1/(s+i)
    let mut rising = s;
    let mut rising_log_deriv = 1.0 / s;
    let mut x_neg = x_pow / x;
    let mut omitted = 0.0;
    for j in 1..=15 {
        let term = bernoulli_over_factorial(j) * rising * x_neg;
        if term.abs() < 1e-18 * sum.value().abs() {
            omitted = term.abs();
            break;
        }
        sum.add(term);
        dsum.add(term * (rising_log_deriv - ln_x));

        let f1 = s + (2 * j - 1) as f64;
        let f2 = s + (2 * j) as f64;
        rising *= f1 * f2;
        rising_log_deriv += 1.0 / f1 + 1.0 / f2;
        x_neg /= x * x;
        omitted = if j < 15 {
            (bernoulli_over_factorial(j + 1) * rising * x_neg).abs()
        } else {
            term.abs()
        };
    }

    HurwitzEval {
        value: sum.value(),
        ds: dsum.value(),
        err_bound: omitted + sum.rounding_bound(),
        terms: k,
    }
}
