//! Synthetic dataset generation under the label-shift causal structure.
//!
//! Labels are drawn first, then a one-dimensional feature from a
//! class-conditional Gaussian with shared variance, so the true posterior is
//! an exact logistic function of the feature and calibration ground truth is
//! analytic. A logit-affine transform then injects controlled miscalibration
//! into the emitted score.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::{Dataset, Sample};
use crate::error::{Error, Result};
use crate::odds::{logit_raw, sigmoid_raw};

#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub n: usize,
    pub pi0: f64,
    pub mu0: f64,
    pub mu1: f64,
    pub sigma: f64,
    pub calib_slope: f64,
    pub calib_intercept: f64,
    pub seed: u64,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        Self {
            n: 1000,
            pi0: 0.5,
            mu0: -1.0,
            mu1: 1.0,
            sigma: 1.0,
            calib_slope: 1.0,
            calib_intercept: 0.0,
            seed: 0,
        }
    }
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidSpec(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if !self.pi0.is_finite() || self.pi0 <= 0.0 || self.pi0 >= 1.0 {
            return Err(Error::OpenUnitInterval(self.pi0));
        }
        if !self.sigma.is_finite() || self.sigma <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        for (name, v) in [
            ("mu0", self.mu0),
            ("mu1", self.mu1),
            ("calib_slope", self.calib_slope),
            ("calib_intercept", self.calib_intercept),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidSpec(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Log odds of the true posterior at feature value `x`.
    pub fn posterior_logit(&self, x: f64) -> f64 {
        (self.mu1 - self.mu0) * (x - 0.5 * (self.mu0 + self.mu1)) / (self.sigma * self.sigma)
            + logit_raw(self.pi0)
    }
}

/// Draws a dataset from the generator. Deterministic given the seed.
pub fn generate(spec: &GeneratorSpec) -> Result<Dataset> {
    let rows = generate_rows(spec)?;
    Dataset::new(
        rows.into_iter()
            .map(|(_, y, s)| Sample::new(s, y))
            .collect(),
    )
}

/// `(feature, label, score)` triples; the feature is kept for tests against
/// the analytic posterior.
pub(crate) fn generate_rows(spec: &GeneratorSpec) -> Result<Vec<(f64, bool, f64)>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise =
        Normal::new(0.0, spec.sigma).map_err(|e| Error::InvalidSpec(format!("gaussian: {e}")))?;
    let mut rows = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let y = rng.random_bool(spec.pi0);
        let mu = if y { spec.mu1 } else { spec.mu0 };
        let x = mu + noise.sample(&mut rng);
        let z = spec.posterior_logit(x);
        let score = sigmoid_raw(spec.calib_slope * z + spec.calib_intercept);
        rows.push((x, y, score));
    }
    Ok(rows)
}
