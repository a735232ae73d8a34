//! Compensated summation.
//!
//! Metric results must not depend on accumulation order beyond ~1e-10, so
//! every reduction in this crate goes through a Neumaier accumulator.

/// Neumaier variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of an iterator of terms.
pub fn sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = Accumulator::new();
    for t in terms {
        acc.add(t);
    }
    acc.total()
}

/// Compensated weighted mean of `(value, weight)` pairs.
///
/// Returns `NaN` when the total weight is zero.
pub fn weighted_mean<'a, I>(pairs: I) -> f64
where
    I: IntoIterator<Item = &'a (f64, f64)>,
{
    let mut num = Accumulator::new();
    let mut den = Accumulator::new();
    for &(value, weight) in pairs {
        num.add(value * weight);
        den.add(weight);
    }
    num.total() / den.total()
}
