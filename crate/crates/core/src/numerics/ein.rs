use crate::constants::EULER_GAMMA;
use crate::error::{domain, Error, Result};
use crate::sum::NeumaierSum;

/// Largest `|x|` accepted by [`ein`].
pub const EIN_MAX_ABS: f64 = 1e4;

/// Above this the power series is replaced by `γ + ln x + E₁(x)`; the
/// alternating terms of the series peak near `n ≈ x` and their rounding error
/// grows like `e^x / x^{3/2}`.
const EIN_SERIES_LIMIT: f64 = 4.0;

/// Modified exponential integral `Ein(x) = Σ_{n≥1} (-1)^{n-1} x^n / (n! n)
/// = ∫_0^x (1 - e^{-t})/t dt`.
///
/// Negative arguments use the series, whose terms are then all positive;
/// results that overflow are reported as [`Error::Overflow`].
pub fn ein(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(domain("ein", x, "finite x"));
    }
    if x.abs() > EIN_MAX_ABS {
        return Err(Error::Overflow {
            op: "ein",
            value: x,
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let v = if x <= EIN_SERIES_LIMIT {
        ein_series(x)
    } else {
        EULER_GAMMA + x.ln() + exp_integral_e1(x)?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            op: "ein",
            value: x,
        })
    }
}

fn ein_series(x: f64) -> f64 {
    let mut acc = NeumaierSum::new();
    // power = (-1)^{n-1} x^n / n!
    let mut power = x;
    let mut n = 1.0;
    loop {
        let term = power / n;
        acc.add(term);
        if term.abs() <= 1e-18 * acc.value().abs() && n > x.abs() {
            break;
        }
        n += 1.0;
        power *= -x / n;
        if !power.is_finite() {
            return f64::INFINITY;
        }
    }
    acc.value()
}

/// Exponential integral `E₁(x) = ∫_x^∞ e^{-t}/t dt` for `x > 0`.
///
/// Series `-γ - ln x + Σ (-1)^{n-1} x^n/(n! n)` below 1, modified Lentz
/// continued fraction above.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("exp_integral_e1", x, "x > 0"));
    }
    if x < 1.0 {
        return Ok(-EULER_GAMMA - x.ln() + ein_series(x));
    }
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h * (-x).exp());
        }
    }
    Err(Error::NonConvergence {
        estimate: h * (-x).exp(),
        err_estimate: f64::NAN,
        nodes: 1000,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ein_reference_values() {
        // mpmath: ∫_0^x (1 - e^{-t})/t dt
        let cases = [
            (0.5, 0.443_842_079_117_748_36),
            (1.0, 0.796_599_599_297_053_1),
            (2.0, 1.319_263_356_169_539_3),
            (10.0, 2.879_804_914_864_508_2),
            (40.0, 4.266_095_119_015_469_2),
            (-3.0, -8.258_004_617_055_774),
        ];
        for (x, expected) in cases {
            let v = ein(x).unwrap();
            assert!(
                (v - expected).abs() < 1e-14 * expected.abs().max(1.0),
                "x = {x}: {v}"
            );
        }
        assert_eq!(ein(0.0).unwrap(), 0.0);
    }

    #[test]
    fn series_and_exponential_integral_agree_at_switchover() {
        for &x in &[1.0, 2.5, 4.0] {
            let series = ein_series(x);
            let e1 = EULER_GAMMA + x.ln() + exp_integral_e1(x).unwrap();
            assert!((series - e1).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn large_argument_approaches_log() {
        let x = 1e4;
        let v = ein(x).unwrap();
        assert!((v - (EULER_GAMMA + x.ln())).abs() < 1e-15 * v);
    }

    #[test]
    fn overflow_and_range_errors() {
        assert!(matches!(ein(2e4), Err(Error::Overflow { .. })));
        assert!(matches!(ein(-2e4), Err(Error::Overflow { .. })));
        assert!(matches!(ein(-800.0), Err(Error::Overflow { .. })));
        assert!(ein(f64::NAN).is_err());
    }
}
