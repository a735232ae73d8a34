//! Clipped proper scoring rules over a bounded prevalence range, plus the
//! independent quadrature oracle that certifies every closed form.
//!
//! Each score averages a prior-adjusted set metric while the deployment
//! prevalence ranges over an interval, uniformly either in probability or in
//! log odds. The closed forms reduce that average to a per-sample expression
//! built from clipped scores, so values decompose into pointwise losses that
//! bootstrap cheaply. [`quadrature_expectation`] instead integrates the set
//! metric itself numerically and shares no code with the closed forms beyond
//! the scalar odds layer; agreement between the two routes is the central
//! correctness check of this crate.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::odds::{clip_raw, logit_raw, odds_mul_raw, s_half_raw, sigmoid_raw};
use crate::sum::{weighted_mean, Accumulator};

/// Bounds `a < b` on the deployment prevalence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrevalenceInterval {
    a: f64,
    b: f64,
}

impl PrevalenceInterval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && 0.0 < a && a < b && b < 1.0 {
            Ok(Self { a, b })
        } else {
            Err(Error::BadInterval { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `logit(b) - logit(a)`, the interval width in log-odds space.
    pub fn logit_width(&self) -> f64 {
        logit_raw(self.b) - logit_raw(self.a)
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}

/// A score value together with the pointwise decomposition that produced it.
#[derive(Debug, Clone)]
pub struct ScoreReport {
    /// `gamma` times the weighted mean of `per_sample`.
    pub value: f64,
    /// Normalization applied to the pointwise mean.
    pub gamma: f64,
    /// `(loss, weight)` rows; losses are nonnegative and finite.
    pub per_sample: Vec<(f64, f64)>,
}

/// Clipped log-distance of the (possibly transformed) score from the wrong
/// label, relative to the best attainable point of the clip interval.
/// Nonnegative because `clip(1-y)` is the interval point nearest `1-y`.
fn clipped_log_term(lo: f64, hi: f64, z: f64, y: bool) -> f64 {
    let yv = if y { 1.0 } else { 0.0 };
    let cz = clip_raw(lo, hi, z);
    let cb = clip_raw(lo, hi, 1.0 - yv);
    (1.0 - yv - cz).abs().ln() - (1.0 - yv - cb).abs().ln()
}

fn clipped_brier_term(lo: f64, hi: f64, z: f64, y: bool) -> f64 {
    let yv = if y { 1.0 } else { 0.0 };
    let cz = clip_raw(lo, hi, z);
    let cb = clip_raw(lo, hi, 1.0 - yv);
    (cb - yv) * (cb - yv) - (cz - yv) * (cz - yv)
}

fn check_interior_pi0(d: &Dataset) -> Result<f64> {
    let pi0 = d.pi0();
    if pi0 <= 0.0 || pi0 >= 1.0 {
        return Err(Error::OpenUnitInterval(pi0));
    }
    Ok(pi0)
}

fn check_open(v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 || v >= 1.0 {
        return Err(Error::OpenUnitInterval(v));
    }
    Ok(())
}

/// Half-adjusted score and balance-reweighted weight per sample.
fn balanced_rows(d: &Dataset) -> Result<Vec<(f64, bool, f64)>> {
    let pi0 = check_interior_pi0(d)?;
    Ok(d.samples()
        .iter()
        .map(|s| {
            let z = s_half_raw(s.score, pi0);
            let w = s.weight
                * if s.label {
                    0.5 / pi0
                } else {
                    0.5 / (1.0 - pi0)
                };
            (z, s.label, w)
        })
        .collect())
}

/// `(b-a) * E[prior-adjusted accuracy]` for prevalence uniform in
/// probability over the interval, via the clipped squared-distance form.
pub fn bounded_brier(d: &Dataset, iv: PrevalenceInterval) -> Result<f64> {
    Ok(weighted_mean(&bounded_brier_pointwise(d, iv)?))
}

pub fn bounded_brier_pointwise(d: &Dataset, iv: PrevalenceInterval) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = (1.0 - iv.b, 1.0 - iv.a);
    Ok(balanced_rows(d)?
        .into_iter()
        .map(|(z, y, w)| (clipped_brier_term(lo, hi, z, y), w))
        .collect())
}

/// `(logit b - logit a) * E[prior-adjusted accuracy]` for prevalence uniform
/// in log odds, via the clipped log form.
pub fn bounded_log(d: &Dataset, iv: PrevalenceInterval) -> Result<f64> {
    Ok(weighted_mean(&bounded_log_pointwise(d, iv)?))
}

pub fn bounded_log_pointwise(d: &Dataset, iv: PrevalenceInterval) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = (1.0 - iv.b, 1.0 - iv.a);
    Ok(balanced_rows(d)?
        .into_iter()
        .map(|(z, y, w)| (2.0 * clipped_log_term(lo, hi, z, y), w))
        .collect())
}

/// `(logit b - logit a) * E[prior-adjusted weighted accuracy]` at cost ratio
/// `c`. Same form as [`bounded_log`] with the clip interval blended by the
/// cost ratio, because folding the cost into the prior shifts the whole
/// integration range in log-odds space without changing its width.
pub fn wa_log(d: &Dataset, iv: PrevalenceInterval, c: f64) -> Result<f64> {
    Ok(weighted_mean(&wa_log_pointwise(d, iv, c)?))
}

pub fn wa_log_pointwise(d: &Dataset, iv: PrevalenceInterval, c: f64) -> Result<Vec<(f64, f64)>> {
    check_open(c)?;
    let lo = odds_mul_raw(c, 1.0 - iv.b)?;
    let hi = odds_mul_raw(c, 1.0 - iv.a)?;
    Ok(balanced_rows(d)?
        .into_iter()
        .map(|(z, y, w)| (2.0 * clipped_log_term(lo, hi, z, y), w))
        .collect())
}

/// Expected prior-adjusted net benefit at cost ratio `c`, the prevalence
/// uniform in log odds over the interval. Units: true-positive equivalents
/// per evaluation row.
///
/// Computed as `gamma` times the mean clipped log term over the dataset
/// reweighted to prevalence `1-c`, with the score first half-adjusted and
/// then blended with the cost ratio. `gamma = (1-c)^-1 / (logit b - logit a)`
/// normalizes the integral to an expectation; multiply by
/// [`PrevalenceInterval::logit_width`] to recover the unnormalized integral.
pub fn dca_log(d: &Dataset, iv: PrevalenceInterval, c: f64) -> Result<ScoreReport> {
    check_open(c)?;
    let pi0 = check_interior_pi0(d)?;
    let (lo, hi) = (1.0 - iv.b, 1.0 - iv.a);
    let per_sample: Vec<(f64, f64)> = d
        .samples()
        .iter()
        .map(|s| {
            let zc = odds_mul_raw(1.0 - c, s_half_raw(s.score, pi0)).expect("interior cost");
            let w = s.weight
                * if s.label {
                    (1.0 - c) / pi0
                } else {
                    c / (1.0 - pi0)
                };
            (clipped_log_term(lo, hi, zc, s.label), w)
        })
        .collect();
    let gamma = 1.0 / ((1.0 - c) * iv.logit_width());
    let value = gamma * weighted_mean(&per_sample);
    Ok(ScoreReport {
        value,
        gamma,
        per_sample,
    })
}

/// The `(loss, weight)` rows of [`dca_log`]: `gamma` times their weighted
/// mean reproduces the score exactly.
pub fn pointwise_losses(d: &Dataset, iv: PrevalenceInterval, c: f64) -> Result<Vec<(f64, f64)>> {
    Ok(dca_log(d, iv, c)?.per_sample)
}

/// Which set metric the oracle integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Pama,
    Pamnb,
    Pamwa,
}

/// Distribution of the prevalence across the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    LogitUniform,
    ProbabilityUniform,
}

/// Numerically averages the requested set metric (at its optimal adjusted
/// threshold) over the prevalence interval: composite trapezoid over a
/// uniform grid in logit prevalence, with the grid augmented by the exact
/// abscissas where a sample's prediction flips. Each flip is evaluated from
/// both sides, so the only quadrature error is smooth-curvature error.
/// Returns the average; closed forms that include the interval width must be
/// divided by it before comparison.
pub fn quadrature_expectation(
    d: &Dataset,
    kind: OracleKind,
    iv: PrevalenceInterval,
    c: f64,
    nodes: usize,
    measure: Measure,
) -> Result<f64> {
    if nodes < 3 || nodes.is_multiple_of(2) {
        return Err(Error::BadNodeCount(nodes));
    }
    check_open(c)?;
    let pi0 = check_interior_pi0(d)?;
    let (la, lb) = (logit_raw(iv.a), logit_raw(iv.b));
    let w_total = d.total_weight();

    // Log-odds offset between the evaluation prevalence and the prior the
    // metric's value weights use (the cost blend for weighted accuracy).
    let shift = match kind {
        OracleKind::Pamwa => logit_raw(1.0 - c),
        _ => 0.0,
    };
    let cost_factor = match kind {
        OracleKind::Pamnb => c / (1.0 - c),
        _ => 1.0,
    };

    // Prediction flips from negative to positive once the abscissa reaches
    // logit(threshold) - logit(1-pi0) - logit(score); endpoint scores never
    // flip.
    let threshold_logit = match kind {
        OracleKind::Pamnb => logit_raw(c),
        _ => 0.0,
    };
    let mut pos_on = Accumulator::new();
    let mut neg_on = Accumulator::new();
    let mut neg_total = Accumulator::new();
    let mut interior: Vec<(f64, f64, f64)> = Vec::new();
    for s in d.samples() {
        if !s.label {
            neg_total.add(s.weight);
        }
        let flip = if s.score == 0.0 {
            f64::INFINITY
        } else if s.score == 1.0 {
            f64::NEG_INFINITY
        } else {
            threshold_logit - shift - logit_raw(1.0 - pi0) - logit_raw(s.score)
        };
        if flip <= la {
            if s.label {
                pos_on.add(s.weight);
            } else {
                neg_on.add(s.weight);
            }
        } else if flip <= lb {
            let (p, n) = if s.label {
                (s.weight, 0.0)
            } else {
                (0.0, s.weight)
            };
            interior.push((flip, p, n));
        }
    }
    interior.sort_by(|a, b| a.0.total_cmp(&b.0));
    let neg_total = neg_total.total();

    let value_at = |l: f64, pos_on: f64, neg_on: f64| -> f64 {
        let p_eff = sigmoid_raw(l + shift);
        let v = (p_eff / pi0 * pos_on
            + cost_factor * (1.0 - p_eff) / (1.0 - pi0) * (neg_total - neg_on))
            / w_total;
        match measure {
            Measure::LogitUniform => v,
            Measure::ProbabilityUniform => {
                let p = sigmoid_raw(l);
                v * p * (1.0 - p)
            }
        }
    };

    let h = (lb - la) / (nodes - 1) as f64;
    let mut integral = Accumulator::new();
    let mut prev: Option<(f64, f64)> = None;
    let push = |integral: &mut Accumulator, prev: &mut Option<(f64, f64)>, x: f64, v: f64| {
        if let Some((px, pv)) = *prev {
            integral.add((x - px) * 0.5 * (pv + v));
        }
        *prev = Some((x, v));
    };

    let mut fi = 0;
    for k in 0..nodes {
        let u = if k == nodes - 1 {
            lb
        } else {
            la + k as f64 * h
        };
        let mut coincided = false;
        while fi < interior.len() && interior[fi].0 <= u {
            let x = interior[fi].0;
            let mut bp = 0.0;
            let mut bn = 0.0;
            // merge flips sharing an abscissa into one jump
            while fi < interior.len() && interior[fi].0 == x {
                bp += interior[fi].1;
                bn += interior[fi].2;
                fi += 1;
            }
            coincided = x == u;
            push(
                &mut integral,
                &mut prev,
                x,
                value_at(x, pos_on.total(), neg_on.total()),
            );
            pos_on.add(bp);
            neg_on.add(bn);
            push(
                &mut integral,
                &mut prev,
                x,
                value_at(x, pos_on.total(), neg_on.total()),
            );
        }
        if !coincided {
            push(
                &mut integral,
                &mut prev,
                u,
                value_at(u, pos_on.total(), neg_on.total()),
            );
        }
    }

    let norm = match measure {
        Measure::LogitUniform => lb - la,
        Measure::ProbabilityUniform => iv.width(),
    };
    Ok(integral.total() / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Sample;
    use crate::metrics;

    fn iv(a: f64, b: f64) -> PrevalenceInterval {
        PrevalenceInterval::new(a, b).unwrap()
    }

    fn two_sample() -> Dataset {
        Dataset::new(vec![Sample::new(0.9, true), Sample::new(0.1, false)]).unwrap()
    }

    fn seeded_dataset(seed: u64, n: usize) -> Dataset {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut samples = Vec::with_capacity(n);
        for _ in 0..n {
            let score: f64 = rng.random();
            let label = rng.random_bool(score.clamp(0.02, 0.98));
            samples.push(Sample::weighted(score, label, rng.random_range(0.5..2.0)));
        }
        samples[0].label = true;
        samples[1].label = false;
        Dataset::new(samples).unwrap()
    }

    #[test]
    fn interval_validation() {
        assert!(PrevalenceInterval::new(0.0, 0.5).is_err());
        assert!(PrevalenceInterval::new(0.5, 0.5).is_err());
        assert!(PrevalenceInterval::new(0.6, 0.4).is_err());
        assert!(PrevalenceInterval::new(0.25, 0.75).is_ok());
    }

    #[test]
    fn brier_full_range_per_sample_limit() {
        // as the interval approaches (0,1) the clip is the identity and the
        // per-sample value tends to 1 - (z - y)^2
        let d = two_sample();
        let eps = 1e-9;
        let rows = bounded_brier_pointwise(&d, iv(eps, 1.0 - eps)).unwrap();
        for ((loss, _), (z, y, _)) in rows.iter().zip(balanced_rows(&d).unwrap()) {
            let yv = if y { 1.0 } else { 0.0 };
            let want = 1.0 - (z - yv) * (z - yv);
            assert!((loss - want).abs() < 1e-6);
        }
    }

    #[test]
    fn brier_single_sample_closed_form() {
        // y=1, z=0.9, clip to [0.25,0.75]: (0.25-1)^2 - (0.75-1)^2 = 0.5
        assert!((clipped_brier_term(0.25, 0.75, 0.9, true) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn log_single_sample_closed_form() {
        // y=1, z=0.9 clipped into [0.25,0.75]: 2(ln 0.75 - ln 0.25) = 2 ln 3
        let term = 2.0 * clipped_log_term(0.25, 0.75, 0.9, true);
        assert!((term - 2.0 * 3.0f64.ln()).abs() < 1e-12);
        // y=0, z=0.1: same value by label/score flip symmetry
        let term = 2.0 * clipped_log_term(0.25, 0.75, 0.1, false);
        assert!((term - 2.0 * 3.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn dca_two_sample_value() {
        // worked example: balanced pair (0.9 pos, 0.1 neg), interval
        // (0.25, 0.75), c = 1/3 integrates to exactly 0.75
        let d = two_sample();
        let r = dca_log(&d, iv(0.25, 0.75), 1.0 / 3.0).unwrap();
        assert!((r.value - 0.75).abs() < 1e-12);
    }

    #[test]
    fn dca_at_symmetric_cost_reduces_to_bounded_log() {
        let d = seeded_dataset(5, 120);
        let interval = iv(0.2, 0.7);
        let r = dca_log(&d, interval, 0.5).unwrap();
        let want = bounded_log(&d, interval).unwrap() / interval.logit_width();
        assert!((r.value - want).abs() < 1e-12);
    }

    #[test]
    fn wa_log_at_symmetric_cost_is_bounded_log() {
        let d = seeded_dataset(6, 90);
        let interval = iv(0.1, 0.6);
        let a = wa_log(&d, interval, 0.5).unwrap();
        let b = bounded_log(&d, interval).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn wa_log_equals_bounded_log_at_blended_interval() {
        let d = seeded_dataset(7, 90);
        let c = 0.3;
        let interval = iv(0.15, 0.8);
        let a2 = odds_mul_raw(1.0 - c, interval.a()).unwrap();
        let b2 = odds_mul_raw(1.0 - c, interval.b()).unwrap();
        let direct = wa_log(&d, interval, c).unwrap();
        let via = bounded_log(&d, iv(a2, b2)).unwrap();
        assert!((direct - via).abs() < 1e-12);
    }

    #[test]
    fn pointwise_losses_reproduce_value_and_are_nonnegative() {
        let d = seeded_dataset(8, 150);
        let interval = iv(0.05, 0.5);
        let c = 0.37;
        let report = dca_log(&d, interval, c).unwrap();
        let mean = weighted_mean(&report.per_sample);
        assert_eq!(report.gamma * mean, report.value);
        for &(loss, w) in &report.per_sample {
            assert!(loss >= 0.0 && loss.is_finite());
            assert!(w.is_finite() && w > 0.0);
        }
    }

    #[test]
    fn duplicating_a_row_leaves_value_unchanged() {
        let d = seeded_dataset(9, 40);
        let mut doubled = d.samples().to_vec();
        doubled.extend(d.samples().iter().cloned());
        let d2 = Dataset::new(doubled).unwrap();
        let interval = iv(0.1, 0.7);
        let a = dca_log(&d, interval, 0.25).unwrap().value;
        let b = dca_log(&d2, interval, 0.25).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn quadrature_rejects_bad_node_counts() {
        let d = two_sample();
        let interval = iv(0.3, 0.7);
        for nodes in [0, 1, 2, 4, 100] {
            assert!(quadrature_expectation(
                &d,
                OracleKind::Pama,
                interval,
                0.5,
                nodes,
                Measure::LogitUniform
            )
            .is_err());
        }
    }

    #[test]
    fn quadrature_matches_plain_metric_at_nodes() {
        // the sweep evaluation must agree with the set metrics it integrates:
        // integrate over a hairline interval around a probe prevalence and
        // compare with the midpoint metric value
        let d = seeded_dataset(10, 60);
        for (kind, c) in [
            (OracleKind::Pama, 0.5),
            (OracleKind::Pamnb, 0.3),
            (OracleKind::Pamwa, 0.3),
        ] {
            for probe in [0.21, 0.47, 0.63] {
                let eps = 1e-7;
                let got = quadrature_expectation(
                    &d,
                    kind,
                    iv(probe - eps, probe + eps),
                    c,
                    3,
                    Measure::LogitUniform,
                )
                .unwrap();
                let want = match kind {
                    OracleKind::Pama => metrics::pama(&d, probe, 0.5).unwrap(),
                    OracleKind::Pamnb => metrics::pamnb(&d, probe, c).unwrap(),
                    OracleKind::Pamwa => metrics::pamwa(&d, probe, 0.5, c).unwrap(),
                };
                assert!(
                    (got - want).abs() < 1e-6,
                    "{kind:?} at {probe}: sweep {got} vs metric {want}"
                );
            }
        }
    }

    #[test]
    fn quadrature_refinement_is_stable() {
        let d = seeded_dataset(11, 200);
        let interval = iv(0.2, 0.8);
        let coarse = quadrature_expectation(
            &d,
            OracleKind::Pamnb,
            interval,
            0.4,
            1025,
            Measure::LogitUniform,
        )
        .unwrap();
        let fine = quadrature_expectation(
            &d,
            OracleKind::Pamnb,
            interval,
            0.4,
            2049,
            Measure::LogitUniform,
        )
        .unwrap();
        assert!(
            (coarse - fine).abs() < 1e-7,
            "refinement moved the oracle by {}",
            (coarse - fine).abs()
        );
    }

    #[test]
    fn quadrature_single_score_two_piece_average() {
        // one distinct interior score: the prediction flips once, and each
        // side integrates to an exact softplus difference
        let d = Dataset::new(vec![
            Sample::new(0.4, true),
            Sample::new(0.4, false),
            Sample::new(0.4, false),
            Sample::new(0.4, true),
        ])
        .unwrap();
        let interval = iv(0.1, 0.9);
        let got = quadrature_expectation(
            &d,
            OracleKind::Pama,
            interval,
            0.5,
            16385,
            Measure::LogitUniform,
        )
        .unwrap();
        let pi0 = d.pi0();
        let (la, lb) = (logit_raw(0.1), logit_raw(0.9));
        let flip = -logit_raw(1.0 - pi0) - logit_raw(0.4);
        let softplus = |x: f64| (1.0 + x.exp()).ln();
        // below the flip everything is predicted negative: value (1-p)/(1-pi0) * (1-pi0) = 1-p
        // above: value p/pi0 * pi0 = p
        let below = (flip - la) - (softplus(flip) - softplus(la));
        let above = softplus(lb) - softplus(flip);
        let want = (below + above) / (lb - la);
        assert!((got - want).abs() < 1e-9, "{got} vs hand integral {want}");
    }

    #[test]
    fn quadrature_symmetric_cost_collapses_to_pama() {
        let d = seeded_dataset(12, 80);
        let interval = iv(0.25, 0.7);
        let a = quadrature_expectation(
            &d,
            OracleKind::Pamnb,
            interval,
            0.5,
            257,
            Measure::LogitUniform,
        )
        .unwrap();
        let b = quadrature_expectation(
            &d,
            OracleKind::Pama,
            interval,
            0.5,
            257,
            Measure::LogitUniform,
        )
        .unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_match_oracle_on_a_random_dataset() {
        let d = seeded_dataset(13, 200);
        let interval = iv(0.3, 0.7);
        let c = 1.0 / 3.0;
        let nodes = 2049;

        let brier = bounded_brier(&d, interval).unwrap() / interval.width();
        let oracle = quadrature_expectation(
            &d,
            OracleKind::Pama,
            interval,
            0.5,
            nodes,
            Measure::ProbabilityUniform,
        )
        .unwrap();
        assert!((brier - oracle).abs() <= 1e-6 * oracle.abs().max(1e-3));

        let log = bounded_log(&d, interval).unwrap() / interval.logit_width();
        let oracle = quadrature_expectation(
            &d,
            OracleKind::Pama,
            interval,
            0.5,
            nodes,
            Measure::LogitUniform,
        )
        .unwrap();
        assert!((log - oracle).abs() <= 1e-6 * oracle.abs().max(1e-3));

        let dca = dca_log(&d, interval, c).unwrap().value;
        let oracle = quadrature_expectation(
            &d,
            OracleKind::Pamnb,
            interval,
            c,
            nodes,
            Measure::LogitUniform,
        )
        .unwrap();
        assert!((dca - oracle).abs() <= 1e-6 * oracle.abs().max(1e-3));

        let wa = wa_log(&d, interval, c).unwrap() / interval.logit_width();
        let oracle = quadrature_expectation(
            &d,
            OracleKind::Pamwa,
            interval,
            c,
            nodes,
            Measure::LogitUniform,
        )
        .unwrap();
        assert!((wa - oracle).abs() <= 1e-6 * oracle.abs().max(1e-3));
    }

    #[test]
    fn unnormalized_log_score_is_additive_across_partitions() {
        let d = seeded_dataset(14, 110);
        let (a, m, b) = (0.1, 0.35, 0.8);
        let whole = bounded_log(&d, iv(a, b)).unwrap();
        let left = bounded_log(&d, iv(a, m)).unwrap();
        let right = bounded_log(&d, iv(m, b)).unwrap();
        assert!((whole - left - right).abs() < 1e-10);
    }

    #[test]
    fn bounded_log_complement_symmetry() {
        let d = seeded_dataset(15, 75);
        let flipped = Dataset::from_parts(
            d.samples()
                .iter()
                .map(|s| Sample {
                    score: 1.0 - s.score,
                    label: !s.label,
                    group: None,
                    weight: s.weight,
                })
                .collect(),
            1.0 - d.pi0(),
        );
        let interval = iv(0.2, 0.65);
        let mirrored = iv(0.35, 0.8);
        let a = bounded_log(&d, interval).unwrap();
        let b = bounded_log(&flipped, mirrored).unwrap();
        assert!((a - b).abs() < 1e-10);
    }
}
