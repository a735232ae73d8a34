//! Test-only oracles and dataset builders shared by the integration suites.
//!
//! Everything here recomputes results from first principles (pairwise
//! enumeration, exhaustive search) and stays independent of the library's
//! computation paths.

// not every suite uses every helper
#![allow(dead_code)]

use clipscore::dataset::{Dataset, Sample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// O(n^2) pairwise AUC with the half-credit tie convention.
pub fn auc_pairwise_reference(d: &Dataset) -> f64 {
    let mut num = 0.0;
    let mut w_pos = 0.0;
    let mut w_neg = 0.0;
    for neg in d.samples().iter().filter(|s| !s.label) {
        w_neg += neg.weight;
        for pos in d.samples().iter().filter(|s| s.label) {
            let w = neg.weight * pos.weight;
            if pos.score > neg.score {
                num += w;
            } else if pos.score == neg.score {
                num += 0.5 * w;
            }
        }
    }
    for pos in d.samples().iter().filter(|s| s.label) {
        w_pos += pos.weight;
    }
    num / (w_pos * w_neg)
}

/// Exhaustive weighted isotonic fit: minimizes weighted squared error over
/// every contiguous partition of the pooled blocks whose group means are
/// nondecreasing. Returns one level per pooled block. Only usable for a
/// handful of blocks.
pub fn isotonic_exhaustive_reference(blocks: &[(f64, f64)]) -> Vec<f64> {
    let k = blocks.len();
    assert!(k <= 16, "exhaustive oracle is exponential in blocks");
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 0..(1u32 << (k - 1)) {
        let mut levels = Vec::with_capacity(k);
        let mut sse = 0.0;
        let mut start = 0;
        let mut feasible = true;
        let mut prev_mean = f64::NEG_INFINITY;
        for end in 0..k {
            let boundary = end == k - 1 || (mask >> end) & 1 == 1;
            if !boundary {
                continue;
            }
            let mut w = 0.0;
            let mut wy = 0.0;
            for &(mean, weight) in &blocks[start..=end] {
                w += weight;
                wy += mean * weight;
            }
            let level = wy / w;
            if level < prev_mean {
                feasible = false;
                break;
            }
            prev_mean = level;
            for &(mean, weight) in &blocks[start..=end] {
                sse += weight * (mean - level) * (mean - level);
            }
            for _ in start..=end {
                levels.push(level);
            }
            start = end + 1;
        }
        if !feasible {
            continue;
        }
        if best.as_ref().is_none_or(|(s, _)| sse < *s) {
            best = Some((sse, levels));
        }
    }
    best.expect("the one-block partition is always feasible").1
}

/// Uniform scores; labels either Bernoulli(score) or drawn from a bent
/// posterior when `miscalibrated`. Always contains both classes.
pub fn random_dataset(seed: u64, n: usize, miscalibrated: bool, weighted: bool) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        let score: f64 = rng.random();
        let p = if miscalibrated {
            let logit =
                (score.clamp(1e-6, 1.0 - 1e-6) / (1.0 - score.clamp(1e-6, 1.0 - 1e-6))).ln();
            1.0 / (1.0 + (-(1.8 * logit + 0.6)).exp())
        } else {
            score
        };
        let label = rng.random_bool(p.clamp(0.02, 0.98));
        let weight = if weighted {
            rng.random_range(0.25..2.5)
        } else {
            1.0
        };
        samples.push(Sample::weighted(score, label, weight));
    }
    samples[0].label = true;
    samples[1].label = false;
    Dataset::new(samples).unwrap()
}

/// Scores drawn from a small grid so ties are heavy.
pub fn tied_dataset(seed: u64, n: usize, grid: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        let score = rng.random_range(0..=grid) as f64 / grid as f64;
        let label = rng.random_bool(score.clamp(0.05, 0.95));
        samples.push(Sample::weighted(score, label, rng.random_range(0.5..2.0)));
    }
    samples[0].label = true;
    samples[1].label = false;
    Dataset::new(samples).unwrap()
}

/// A dataset whose every distinct score value equals the weighted positive
/// fraction at that value, built from random rational tables. Blocks may
/// include the exact endpoints 0 and 1.
pub fn calibrated_dataset(seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    let blocks = rng.random_range(2..7usize);
    for _ in 0..blocks {
        let q = rng.random_range(2..24u32);
        let p = rng.random_range(1..q);
        let reps = rng.random_range(1..3u32);
        let v = p as f64 / q as f64;
        for _ in 0..(p * reps) {
            samples.push(Sample::new(v, true));
        }
        for _ in 0..((q - p) * reps) {
            samples.push(Sample::new(v, false));
        }
    }
    if rng.random_bool(0.3) {
        // endpoint blocks are single-class by definition of calibration
        for _ in 0..rng.random_range(1..4u32) {
            samples.push(Sample::new(1.0, true));
        }
        for _ in 0..rng.random_range(1..4u32) {
            samples.push(Sample::new(0.0, false));
        }
    }
    Dataset::new(samples).unwrap()
}

/// The worked eight-row example: four rows at score 0.25 with one positive,
/// four at 0.75 with three positives.
pub fn d8() -> Dataset {
    let mut samples = vec![Sample::new(0.25, true)];
    samples.extend((0..3).map(|_| Sample::new(0.25, false)));
    samples.extend((0..3).map(|_| Sample::new(0.75, true)));
    samples.push(Sample::new(0.75, false));
    Dataset::new(samples).unwrap()
}
