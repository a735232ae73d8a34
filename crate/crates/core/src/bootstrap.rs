//! Percentile bootstrap over pointwise loss contributions.
//!
//! Every score in this crate decomposes into `(loss, weight)` rows, so a
//! bootstrap replicate is just a weighted mean of resampled rows. Replicate
//! RNG streams are derived from `(seed, replicate index)` alone, making the
//! result independent of execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sum::Accumulator;

#[derive(Debug, Clone, Copy)]
pub struct BootstrapSpec {
    pub replicates: usize,
    /// Confidence level, e.g. 0.95.
    pub level: f64,
    pub seed: u64,
}

impl Default for BootstrapSpec {
    fn default() -> Self {
        Self {
            replicates: 2000,
            level: 0.95,
            seed: 0,
        }
    }
}

impl BootstrapSpec {
    pub fn validate(&self) -> Result<()> {
        if self.replicates < 100 {
            return Err(Error::InvalidSpec(format!(
                "bootstrap needs at least 100 replicates, got {}",
                self.replicates
            )));
        }
        if !self.level.is_finite() || self.level <= 0.0 || self.level >= 1.0 {
            return Err(Error::OpenUnitInterval(self.level));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceInterval {
    pub lo: f64,
    pub hi: f64,
    pub point: f64,
}

/// Counter-based replicate stream: a fixed function of seed and index.
pub fn replicate_rng(seed: u64, replicate: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(
        seed ^ (replicate as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    ))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Runs `spec.replicates` independent replicates of a statistic vector and
/// returns one series per statistic, ordered by replicate index.
pub fn bootstrap_multi<F>(spec: &BootstrapSpec, n_stats: usize, mut f: F) -> Result<Vec<Vec<f64>>>
where
    F: FnMut(&mut ChaCha8Rng) -> Vec<f64>,
{
    spec.validate()?;
    let mut series = vec![Vec::with_capacity(spec.replicates); n_stats];
    for r in 0..spec.replicates {
        let mut rng = replicate_rng(spec.seed, r);
        let stats = f(&mut rng);
        debug_assert_eq!(stats.len(), n_stats);
        for (out, v) in series.iter_mut().zip(stats) {
            out.push(v);
        }
    }
    Ok(series)
}

/// Percentile interval at the requested level (linear interpolation).
pub fn percentile_interval(stats: &[f64], level: f64) -> (f64, f64) {
    let mut sorted = stats.to_vec();
    sorted.sort_by(f64::total_cmp);
    let alpha = (1.0 - level) / 2.0;
    (quantile(&sorted, alpha), quantile(&sorted, 1.0 - alpha))
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let rank = q * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64)
    }
}

/// Draws `n` row indices with replacement and returns the weighted mean of
/// the drawn rows.
pub fn resampled_mean(losses: &[(f64, f64)], rng: &mut ChaCha8Rng) -> f64 {
    let n = losses.len();
    let mut num = Accumulator::new();
    let mut den = Accumulator::new();
    for _ in 0..n {
        let (loss, weight) = losses[rng.random_range(0..n)];
        num.add(loss * weight);
        den.add(weight);
    }
    num.total() / den.total()
}

/// Percentile bootstrap of `scale` times the weighted mean of the losses.
///
/// Rows are resampled with replacement carrying their weights. Deterministic
/// given `spec.seed`.
pub fn bootstrap_ci(
    losses: &[(f64, f64)],
    scale: f64,
    spec: &BootstrapSpec,
) -> Result<ConfidenceInterval> {
    if losses.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let point = scale * crate::sum::weighted_mean(losses);
    let series = bootstrap_multi(spec, 1, |rng| vec![scale * resampled_mean(losses, rng)])?;
    let (lo, hi) = percentile_interval(&series[0], spec.level);
    Ok(ConfidenceInterval { lo, hi, point })
}
