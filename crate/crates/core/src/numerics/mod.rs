//! Special functions evaluated from scratch in double precision.
//!
//! Everything here is a pure function of its arguments. The gamma family
//! ([`digamma`], [`log_gamma`]) shifts the argument upward and then uses the
//! Stirling expansion; the zeta family ([`hurwitz_zeta`], [`zeta_minus_one`],
//! [`zeta_prime`]) uses direct summation plus an Euler–Maclaurin tail.

mod ein;
mod gamma;
mod zeta;

pub use ein::{ein, exp_integral_e1};
pub use gamma::{digamma, log_gamma};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_with_error, zeta_minus_one, zeta_prime, HurwitzEval};

use crate::sum::NeumaierSum;

/// Even-index Bernoulli numbers `B_2, B_4, …, B_30`.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// `B_{2j} / (2j)!` for `j = 1..=15`.
pub(crate) fn bernoulli_over_factorial(j: usize) -> f64 {
    debug_assert!((1..=BERNOULLI_EVEN.len()).contains(&j));
    let mut fact = 1.0;
    for i in 2..=(2 * j) {
        fact *= i as f64;
    }
    BERNOULLI_EVEN[j - 1] / fact
}

/// Harmonic number `H_n = 1 + 1/2 + … + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> f64 {
    (1..=n)
        .map(|k| 1.0 / k as f64)
        .collect::<NeumaierSum>()
        .value()
}

/// Skew-harmonic number `H_n^- = 1 - 1/2 + 1/3 - … + (-1)^{n-1}/n`, with `H_0^- = 0`.
pub fn skew_harmonic(n: u64) -> f64 {
    (1..=n)
        .map(|k| {
            let v = 1.0 / k as f64;
            if k % 2 == 1 {
                v
            } else {
                -v
            }
        })
        .collect::<NeumaierSum>()
        .value()
}

/// Laguerre polynomial `L_n(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic(0), 0.0);
        assert_eq!(harmonic(1), 1.0);
        assert!((harmonic(3) - 11.0 / 6.0).abs() < 1e-15);
        assert_eq!(skew_harmonic(0), 0.0);
        assert!((skew_harmonic(3) - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn skew_harmonic_bounded_by_harmonic() {
        for n in 0..500 {
            assert!(skew_harmonic(n).abs() <= harmonic(n));
        }
    }

    #[test]
    fn laguerre_low_orders() {
        for &x in &[-3.0, 0.0, 0.7, 2.0, 11.0] {
            assert_eq!(laguerre(0, x), 1.0);
            assert!((laguerre(1, x) - (1.0 - x)).abs() < 1e-15);
            let l2 = 1.0 - 2.0 * x + x * x / 2.0;
            assert!((laguerre(2, x) - l2).abs() < 1e-13 * l2.abs().max(1.0));
            let l3 = 1.0 - 3.0 * x + 1.5 * x * x - x * x * x / 6.0;
            assert!((laguerre(3, x) - l3).abs() < 1e-12 * l3.abs().max(1.0));
        }
        assert_eq!(laguerre(1, 3.0), -2.0);
        assert_eq!(laguerre(2, 2.0), -1.0);
    }

    #[test]
    fn laguerre_at_zero_is_one() {
        for n in 0..40 {
            assert!((laguerre(n, 0.0) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn bernoulli_scaled_first_terms() {
        assert!((bernoulli_over_factorial(1) - 1.0 / 12.0).abs() < 1e-17);
        assert!((bernoulli_over_factorial(2) + 1.0 / 720.0).abs() < 1e-18);
        assert!((bernoulli_over_factorial(3) - 1.0 / 30240.0).abs() < 1e-19);
    }
}
