//! Compensated (Kahan–Babuška–Neumaier) summation.
//!
//! Every long accumulation in the crate goes through [`NeumaierSum`]. The
//! accumulator also tracks the sum of absolute values of what was added, which
//! gives a cheap a-posteriori rounding bound for the reported error.

use std::iter::FromIterator;
use std::ops::AddAssign;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
    abs_sum: f64,
    count: usize,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += value.abs();
        self.count += 1;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Number of values added so far.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Sum of `|x|` over everything added.
    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    /// Conservative bound on the accumulated rounding error, assuming each
    /// added value carries a relative error of a few ulps.
    pub fn rounding_bound(&self) -> f64 {
        4.0 * f64::EPSILON * self.abs_sum + f64::EPSILON * self.value().abs()
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<NeumaierSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_lost_by_naive_summation() {
        let values = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = values.iter().sum();
        assert_eq!(naive, 0.0);
        assert_eq!(compensated_sum(values), 2.0);
    }

    #[test]
    fn tenth_summed_many_times() {
        let acc: NeumaierSum = std::iter::repeat(0.1).take(1_000_000).collect();
        assert!((acc.value() - 100_000.0).abs() < 1e-9);
        assert_eq!(acc.count(), 1_000_000);
    }

    #[test]
    fn empty_sum_is_zero() {
        let acc = NeumaierSum::new();
        assert_eq!(acc.value(), 0.0);
        assert_eq!(acc.rounding_bound(), 0.0);
    }
}
