use super::BERNOULLI_EVEN;
use crate::error::{domain, Result};
use crate::sum::NeumaierSum;

/// Arguments below this are shifted upward before the asymptotic expansion.
const ASYMPTOTIC_THRESHOLD: f64 = 10.0;
/// Number of Bernoulli correction terms. At `x >= 10` the first omitted term
/// is below `1e-19`.
const STIRLING_TERMS: usize = 8;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Digamma function `ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("digamma", x, "x > 0"));
    }
    let mut shift = NeumaierSum::new();
    let mut y = x;
    while y < ASYMPTOTIC_THRESHOLD {
        shift.add(-1.0 / y);
        y += 1.0;
    }
    shift.add(digamma_asymptotic(y));
    Ok(shift.value())
}

fn digamma_asymptotic(y: f64) -> f64 {
    let inv2 = 1.0 / (y * y);
    let mut pow = inv2;
    let mut corr = 0.0;
    for (k, b) in BERNOULLI_EVEN.iter().take(STIRLING_TERMS).enumerate() {
        corr += b / (2.0 * (k + 1) as f64) * pow;
        pow *= inv2;
    }
    y.ln() - 0.5 / y - corr
}

/// Natural logarithm of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("log_gamma", x, "x > 0"));
    }
    if x.fract() == 0.0 && x <= 20.0 {
        // (x-1)! is exact in a double up to 19!
        let fact: f64 = (2..x as u32).map(f64::from).product();
        return Ok(fact.ln());
    }
    let mut y = x;
    let mut prod = 1.0;
    while y < ASYMPTOTIC_THRESHOLD {
        prod *= y;
        y += 1.0;
    }
    Ok(stirling(y) - prod.ln())
}

fn stirling(y: f64) -> f64 {
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut corr = 0.0;
    for (k, b) in BERNOULLI_EVEN.iter().take(STIRLING_TERMS).enumerate() {
        let m = 2.0 * (k + 1) as f64;
        corr += b / (m * (m - 1.0)) * pow;
        pow *= inv2;
    }
    (y - 0.5) * y.ln() - y + HALF_LN_TWO_PI + corr
}
