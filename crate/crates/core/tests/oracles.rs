//! Library values against independent oracles computed here, mostly in exact
//! rational arithmetic.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use harmzeta_core::numerics::{
    digamma, ein, harmonic, hurwitz_zeta, laguerre, log_gamma, skew_harmonic, zeta_minus_one,
};
use harmzeta_core::quadrature::{
    integrate_finite, integrate_semi_infinite, ExpEnvelope, Integrand,
};
use harmzeta_core::series::{prop1_partial_sum_check, s_n};

const GAMMA: f64 = 0.577_215_664_901_532_9;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// `ζ(s) - 1` by direct summation with an Euler–Maclaurin tail at 64.
fn zeta_minus_one_oracle(s: f64) -> f64 {
    let n = 64.0_f64;
    let tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0;
    (2..64).rev().fold(tail, |acc, k| acc + (k as f64).powf(-s))
}

#[test]
fn harmonic_numbers_match_exact_sums() {
    let mut h = BigRational::zero();
    let mut skew = BigRational::zero();
    for n in 1..=200i64 {
        h += rat(1, n);
        skew += rat(if n % 2 == 1 { 1 } else { -1 }, n);
        assert!(
            rel(harmonic(n as u64), h.to_f64().unwrap()) <= 4.0 * f64::EPSILON,
            "H_{n}"
        );
        assert!(
            rel(skew_harmonic(n as u64), skew.to_f64().unwrap()) <= 8.0 * f64::EPSILON,
            "H^-_{n}"
        );
    }
}

#[test]
fn log_gamma_matches_exact_factorials() {
    let mut fact = BigInt::one();
    for n in 1..=60u32 {
        let want = fact.to_f64().unwrap().ln();
        let got = log_gamma(n as f64).unwrap();
        assert!(
            (got - want).abs() <= 1e-13 * want.abs().max(1.0),
            "ln Γ({n})"
        );
        fact *= BigInt::from(n);
    }
    assert!((log_gamma(0.5).unwrap() - 0.5 * PI.ln()).abs() <= 1e-14);
}

#[test]
fn digamma_at_half_integers() {
    // ψ(1/2 + n) = -γ - 2 ln 2 + Σ_{k=1}^n 2/(2k-1)
    let mut partial = BigRational::zero();
    for n in 0..=40i64 {
        if n > 0 {
            partial += rat(2, 2 * n - 1);
        }
        let want = -GAMMA - 2.0 * LN_2 + partial.to_f64().unwrap();
        let got = digamma(0.5 + n as f64).unwrap();
        assert!(
            (got - want).abs() <= 1e-13 * want.abs().max(1.0),
            "ψ({n}.5)"
        );
    }
    assert!((digamma(1.0).unwrap() + GAMMA).abs() <= 1e-15);
}

#[test]
fn zeta_values_against_direct_oracle() {
    for n in 2..=60u32 {
        let want = zeta_minus_one_oracle(n as f64);
        assert!(rel(zeta_minus_one(n).unwrap(), want) <= 1e-13, "ζ({n}) - 1");
    }
    // ζ(2, 1/2) = 3ζ(2)
    assert!(rel(hurwitz_zeta(2.0, 0.5).unwrap(), PI * PI / 2.0) <= 1e-14);
    assert!(rel(hurwitz_zeta(4.0, 1.0).unwrap(), PI.powi(4) / 90.0) <= 1e-14);
}

#[test]
fn ein_at_integers_matches_exact_series() {
    for x in [1i64, 3, 10, 20] {
        let mut sum = BigRational::zero();
        let mut term = BigRational::one();
        for n in 1..=(6 * x + 60) {
            term = term * BigInt::from(x) / BigInt::from(n);
            let t = term.clone() / BigInt::from(n);
            if n % 2 == 1 {
                sum += t;
            } else {
                sum -= t;
            }
        }
        let want = sum.to_f64().unwrap();
        assert!(rel(ein(x as f64).unwrap(), want) <= 1e-13, "Ein({x})");
    }
}

#[test]
fn laguerre_matches_exact_polynomial() {
    for n in 0..=20usize {
        for (p, q) in [(1i64, 2i64), (3, 1), (7, 4), (-5, 2)] {
            let x = rat(p, q);
            let mut sum = BigRational::zero();
            let mut binom = BigInt::one();
            let mut fact = BigInt::one();
            let mut pow = BigRational::one();
            for k in 0..=n {
                if k > 0 {
                    binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
                    fact *= BigInt::from(k);
                    pow *= -x.clone();
                }
                sum += pow.clone() * BigRational::from(binom.clone())
                    / BigRational::from(fact.clone());
            }
            let want = sum.to_f64().unwrap();
            let got = laguerre(n, p as f64 / q as f64);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                "L_{n}({p}/{q})"
            );
        }
    }
}

#[test]
fn s_n_matches_exact_series() {
    // S_n = Σ_{k≥2} k^{-n}/(k-1); k ≤ 40 exact, the rest below 1e-30 relative
    for n in 12..=60u32 {
        let mut sum = BigRational::zero();
        for k in 2..=40u32 {
            let den = num_traits::pow(BigInt::from(k), n as usize) * BigInt::from(k - 1);
            sum += BigRational::new(BigInt::one(), den);
        }
        let want = sum.to_f64().unwrap();
        assert!(rel(s_n(n), want) <= 1e-12, "S_{n}");
    }
    assert!((s_n(2) - (2.0 - PI * PI / 6.0)).abs() <= 1e-15);
    assert!(prop1_partial_sum_check(1).is_err());
}

#[test]
fn telescoping_partial_sums() {
    for m in [2, 3, 10, 50, 200] {
        let r = prop1_partial_sum_check(m).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn reference_integrals() {
    let one = integrate_finite(&Integrand::new(|_| 1.0), 0.0, 1.0, 1e-12).unwrap();
    assert!((one.value - 1.0).abs() <= 1e-14);
    let log = integrate_finite(
        &Integrand::new(|t: f64| -t.ln()).singular_at_lower(),
        0.0,
        1.0,
        1e-12,
    )
    .unwrap();
    assert!((log.value - 1.0).abs() <= 1e-13);
    let exp = integrate_semi_infinite(
        &Integrand::new(|x: f64| (-x).exp()).with_envelope(ExpEnvelope::polynomial(vec![0.5])),
        1e-12,
    )
    .unwrap();
    assert!((exp.value - 1.0).abs() <= 1e-12);
    let bose = integrate_semi_infinite(
        &Integrand::new(|x: f64| if x == 0.0 { 0.0 } else { x * x / x.exp_m1() })
            .with_envelope(ExpEnvelope::polynomial(vec![0.0, 0.0, 1.0])),
        1e-12,
    )
    .unwrap();
    let want = 2.0 * (1.0 + zeta_minus_one_oracle(3.0));
    assert!(
        (bose.value - want).abs() <= 1e-11,
        "{} vs {want}",
        bose.value
    );
}
