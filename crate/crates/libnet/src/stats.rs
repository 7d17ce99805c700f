//! Compensated accumulation and summary statistics shared by the series
//! summation and the Monte Carlo engine.

/// Kahan-Neumaier compensated accumulator. Sums long streams with an
/// error independent of the stream length, which keeps million-trial
/// reductions reproducible to the last bit for a fixed summation order.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Two-pass compensated mean and standard error of the mean.
///
/// Returns `(mean, std_error)` with `std_error = sample_std / sqrt(n)`;
/// fewer than two values yield a zero standard error.
pub fn mean_and_std_error(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mut total = CompensatedSum::default();
    for &v in values {
        total.add(v);
    }
    let mean = total.value() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let mut squares = CompensatedSum::default();
    for &v in values {
        let d = v - mean;
        squares.add(d * d);
    }
    let variance = squares.value() / (n as f64 - 1.0);
    (mean, (variance / n as f64).sqrt())
}
