use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use harmzeta_core::numerics::{digamma, hurwitz_zeta};
use harmzeta_core::sum::{compensated_sum, NeumaierSum};
use harmzeta_core::transforms::{abel_transform_check, euler_transform_coeffs, FiniteSequence};

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

proptest! {
    #[test]
    fn summation_by_parts_holds(
        start in -10i64..10,
        pairs in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 2..60),
    ) {
        let a = FiniteSequence::new(start, pairs.iter().map(|p| p.0).collect()).unwrap();
        let b = FiniteSequence::new(start, pairs.iter().map(|p| p.1).collect()).unwrap();
        let r = abel_transform_check(&a, &b, a.end()).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }

    #[test]
    fn euler_transform_is_linear(
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..40),
        alpha in -5.0f64..5.0,
        beta in -5.0f64..5.0,
    ) {
        let n = coeffs.len() - 1;
        let t = |f: &dyn Fn(usize) -> f64| euler_transform_coeffs(f, n).unwrap();
        let combined = t(&|k| alpha * coeffs[k].0 + beta * coeffs[k].1);
        let separate = alpha * t(&|k| coeffs[k].0) + beta * t(&|k| coeffs[k].1);
        let scale = alpha.abs() * t(&|k| coeffs[k].0.abs()) + beta.abs() * t(&|k| coeffs[k].1.abs());
        prop_assert!((combined - separate).abs() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn euler_transform_matches_exact_binomials(coeffs in prop::collection::vec(-1000i64..1000, 1..50)) {
        let n = coeffs.len() - 1;
        let got = euler_transform_coeffs(|k| coeffs[k] as f64, n).unwrap();
        let want: BigInt = (0..=n).map(|k| binomial(n, k) * BigInt::from(coeffs[k])).sum();
        let want = want.to_f64().unwrap();
        let scale: f64 = (0..=n).map(|k| binomial(n, k).to_f64().unwrap() * coeffs[k].abs() as f64).sum();
        prop_assert!((got - want).abs() <= 4.0 * f64::EPSILON * scale.max(1.0));
    }

    #[test]
    fn compensated_sum_is_within_its_bound(values in prop::collection::vec(-1e10f64..1e10, 0..200)) {
        let mut acc = NeumaierSum::new();
        let mut truth = BigRational::zero();
        for &v in &values {
            acc.add(v);
            truth += exact(v);
        }
        let err = (exact(acc.value()) - truth).abs().to_f64().unwrap();
        prop_assert!(err <= acc.rounding_bound());
        prop_assert_eq!(compensated_sum(values.iter().copied()), acc.value());
    }

    #[test]
    fn hurwitz_shift_recurrence(s in 1.1f64..30.0, a in 0.05f64..20.0) {
        let lhs = hurwitz_zeta(s, a).unwrap();
        let rhs = a.powf(-s) + hurwitz_zeta(s, a + 1.0).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs());
    }

    #[test]
    fn digamma_shift_recurrence(x in 0.05f64..50.0) {
        let lhs = digamma(x + 1.0).unwrap();
        let rhs = digamma(x).unwrap() + 1.0 / x;
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + lhs.abs() + 1.0 / x));
    }
}
