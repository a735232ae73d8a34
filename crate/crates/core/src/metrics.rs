//! Thresholded, cost-weighted, prior-adjusted set metrics.
//!
//! Every metric here is a weighted average of per-sample rewards
//! `V(y, yhat)` where only correct predictions score: true positives earn
//! `v11`, true negatives earn `v00`. The taxonomy varies along two axes —
//! how errors are costed (plain, net-benefit, weighted) and which class
//! balance the evaluation assumes (empirical, balanced, arbitrary prior).
//! Denominators always use the pre-shift evaluation set's total weight.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::odds::{adjusted_score_raw, odds_mul_raw};
use crate::sum::Accumulator;

/// Rewards for correct predictions; misclassifications are worth zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueMatrix {
    pub v11: f64,
    pub v00: f64,
}

impl ValueMatrix {
    pub fn new(v11: f64, v00: f64) -> Result<Self> {
        if !v11.is_finite() || !v00.is_finite() || v11 < 0.0 || v00 < 0.0 {
            return Err(Error::InvalidSpec(format!(
                "value matrix entries must be finite and nonnegative: {v11}, {v00}"
            )));
        }
        if v11 == 0.0 && v00 == 0.0 {
            return Err(Error::InvalidSpec(
                "value matrix must have a positive entry".into(),
            ));
        }
        Ok(Self { v11, v00 })
    }

    pub fn accuracy() -> Self {
        Self { v11: 1.0, v00: 1.0 }
    }

    pub fn net_benefit(c: f64) -> Self {
        Self {
            v11: 1.0,
            v00: c / (1.0 - c),
        }
    }

    pub fn prior_adjusted(pi0: f64, pi: f64) -> Self {
        Self {
            v11: pi / pi0,
            v00: (1.0 - pi) / (1.0 - pi0),
        }
    }

    pub fn prior_adjusted_net_benefit(pi0: f64, pi: f64, c: f64) -> Self {
        Self {
            v11: pi / pi0,
            v00: (c / (1.0 - c)) * (1.0 - pi) / (1.0 - pi0),
        }
    }
}

/// Which metric from the taxonomy to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Accuracy,
    BalancedAccuracy,
    NetBenefit,
    WeightedAccuracy,
    Pama,
    Pamnb,
    Pamwa,
}

/// A metric plus its parameters. Kinds that do not use `tau`, `c` or `pi`
/// ignore them.
#[derive(Debug, Clone, Copy)]
pub struct MetricRequest {
    pub kind: MetricKind,
    pub tau: f64,
    pub c: f64,
    pub pi: f64,
}

impl MetricRequest {
    pub fn new(kind: MetricKind) -> Self {
        Self {
            kind,
            tau: 0.5,
            c: 0.5,
            pi: 0.5,
        }
    }

    fn validate(&self) -> Result<()> {
        for v in [self.tau, self.c] {
            if !v.is_finite() || v <= 0.0 || v >= 1.0 {
                return Err(Error::OpenUnitInterval(v));
            }
        }
        if !self.pi.is_finite() || !(0.0..=1.0).contains(&self.pi) {
            return Err(Error::ProbabilityRange(self.pi));
        }
        Ok(())
    }
}

/// Evaluates a metric request.
pub fn evaluate(d: &Dataset, req: &MetricRequest) -> Result<f64> {
    req.validate()?;
    match req.kind {
        MetricKind::Accuracy => accuracy(d, req.tau),
        MetricKind::BalancedAccuracy => balanced_accuracy(d, req.tau),
        MetricKind::NetBenefit => net_benefit(d, req.tau, req.c),
        MetricKind::WeightedAccuracy => weighted_accuracy(d, req.tau, req.c),
        MetricKind::Pama => pama(d, req.pi, req.tau),
        MetricKind::Pamnb => pamnb(d, req.pi, req.c),
        MetricKind::Pamwa => pamwa(d, req.pi, req.tau, req.c),
    }
}

/// Per-row `(loss, weight)` contributions whose weighted mean equals the
/// metric, for bootstrap resampling.
pub fn pointwise(d: &Dataset, req: &MetricRequest) -> Result<Vec<(f64, f64)>> {
    req.validate()?;
    let rows = match req.kind {
        MetricKind::Accuracy => value_rows(d, ValueMatrix::accuracy(), raw_predictor(req.tau)),
        MetricKind::BalancedAccuracy => {
            check_interior_pi0(d)?;
            value_rows(
                d,
                ValueMatrix::prior_adjusted(d.pi0(), 0.5),
                adjusted_predictor(d.pi0(), 0.5, req.tau),
            )
        }
        MetricKind::NetBenefit => {
            value_rows(d, ValueMatrix::net_benefit(req.c), raw_predictor(req.tau))
        }
        MetricKind::WeightedAccuracy => ratio_rows(d, req.c, raw_predictor(req.tau)),
        MetricKind::Pama => {
            check_interior_pi0(d)?;
            value_rows(
                d,
                ValueMatrix::prior_adjusted(d.pi0(), req.pi),
                adjusted_predictor(d.pi0(), req.pi, req.tau),
            )
        }
        MetricKind::Pamnb => {
            check_interior_pi0(d)?;
            value_rows(
                d,
                ValueMatrix::prior_adjusted_net_benefit(d.pi0(), req.pi, req.c),
                adjusted_predictor(d.pi0(), req.pi, req.c),
            )
        }
        MetricKind::Pamwa => {
            check_interior_pi0(d)?;
            let pi_eff = odds_mul_raw(1.0 - req.c, req.pi)?;
            ratio_rows_prior(d, pi_eff, adjusted_predictor(d.pi0(), pi_eff, req.tau))
        }
    };
    Ok(rows)
}

/// Weighted fraction of correct thresholded predictions.
pub fn accuracy(d: &Dataset, tau: f64) -> Result<f64> {
    check_open(tau)?;
    Ok(total_weight_metric(
        d,
        ValueMatrix::accuracy(),
        raw_predictor(tau),
    ))
}

/// True positives credited 1, true negatives credited `c/(1-c)`, averaged
/// over the evaluation set. Units: true-positive equivalents per row.
pub fn net_benefit(d: &Dataset, tau: f64, c: f64) -> Result<f64> {
    check_open(tau)?;
    check_open(c)?;
    Ok(total_weight_metric(
        d,
        ValueMatrix::net_benefit(c),
        raw_predictor(tau),
    ))
}

/// Cost-weighted accuracy normalized so a perfect classifier scores 1.
pub fn weighted_accuracy(d: &Dataset, tau: f64, c: f64) -> Result<f64> {
    check_open(tau)?;
    check_open(c)?;
    let rows = ratio_rows(d, c, raw_predictor(tau));
    Ok(crate::sum::weighted_mean(&rows))
}

/// Accuracy after reweighting both classes to a balanced prior, with the
/// prior-adjusted decision rule.
pub fn balanced_accuracy(d: &Dataset, tau: f64) -> Result<f64> {
    pama(d, 0.5, tau)
}

/// Prior-adjusted accuracy at deployment prevalence `pi`: samples are
/// importance-reweighted and the decision thresholds the prior-adjusted
/// score at `tau` (0.5 is the optimum).
pub fn pama(d: &Dataset, pi: f64, tau: f64) -> Result<f64> {
    check_open(tau)?;
    check_unit(pi)?;
    check_interior_pi0(d)?;
    Ok(total_weight_metric(
        d,
        ValueMatrix::prior_adjusted(d.pi0(), pi),
        adjusted_predictor(d.pi0(), pi, tau),
    ))
}

/// Prior-adjusted net benefit at deployment prevalence `pi` and cost ratio
/// `c`; the decision thresholds the prior-adjusted score at `c` (its
/// optimum).
pub fn pamnb(d: &Dataset, pi: f64, c: f64) -> Result<f64> {
    check_open(c)?;
    check_unit(pi)?;
    check_interior_pi0(d)?;
    Ok(total_weight_metric(
        d,
        ValueMatrix::prior_adjusted_net_benefit(d.pi0(), pi, c),
        adjusted_predictor(d.pi0(), pi, c),
    ))
}

/// Prior-adjusted weighted accuracy. Folding the cost ratio into the prior
/// reduces it to [`pama`] at the blended prevalence `(1-c) ⊗ pi`.
pub fn pamwa(d: &Dataset, pi: f64, tau: f64, c: f64) -> Result<f64> {
    check_open(c)?;
    check_unit(pi)?;
    let pi_eff = odds_mul_raw(1.0 - c, pi)?;
    pama(d, pi_eff, tau)
}

fn check_open(v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 || v >= 1.0 {
        return Err(Error::OpenUnitInterval(v));
    }
    Ok(())
}

fn check_unit(v: f64) -> Result<()> {
    if !v.is_finite() || !(0.0..=1.0).contains(&v) {
        return Err(Error::ProbabilityRange(v));
    }
    Ok(())
}

fn check_interior_pi0(d: &Dataset) -> Result<()> {
    if d.pi0() <= 0.0 || d.pi0() >= 1.0 {
        return Err(Error::OpenUnitInterval(d.pi0()));
    }
    Ok(())
}

fn raw_predictor(tau: f64) -> impl Fn(f64) -> bool {
    move |s| s >= tau
}

fn adjusted_predictor(pi0: f64, pi: f64, threshold: f64) -> impl Fn(f64) -> bool {
    move |s| adjusted_score_raw(s, pi0, pi) >= threshold
}

/// `(1/W) * sum of w * V(y, yhat)` over the dataset.
fn total_weight_metric(d: &Dataset, v: ValueMatrix, predict: impl Fn(f64) -> bool) -> f64 {
    let mut num = Accumulator::new();
    for s in d.samples() {
        let pred = predict(s.score);
        if pred == s.label {
            num.add(s.weight * if s.label { v.v11 } else { v.v00 });
        }
    }
    num.total() / d.total_weight()
}

/// Rows for ratio-normalized metrics: loss is the correctness indicator and
/// the weight carries the cost factor, so the weighted mean is
/// `sum(w*cost*correct) / sum(w*cost)`.
fn ratio_rows(d: &Dataset, c: f64, predict: impl Fn(f64) -> bool) -> Vec<(f64, f64)> {
    d.samples()
        .iter()
        .map(|s| {
            let cost = if s.label { 1.0 - c } else { c };
            let correct = predict(s.score) == s.label;
            (if correct { 1.0 } else { 0.0 }, s.weight * cost)
        })
        .collect()
}

fn ratio_rows_prior(d: &Dataset, pi_eff: f64, predict: impl Fn(f64) -> bool) -> Vec<(f64, f64)> {
    let v = ValueMatrix::prior_adjusted(d.pi0(), pi_eff);
    d.samples()
        .iter()
        .map(|s| {
            let cost = s.weight * if s.label { v.v11 } else { v.v00 };
            let correct = predict(s.score) == s.label;
            (if correct { 1.0 } else { 0.0 }, cost)
        })
        .collect()
}

fn value_rows(d: &Dataset, v: ValueMatrix, predict: impl Fn(f64) -> bool) -> Vec<(f64, f64)> {
    d.samples()
        .iter()
        .map(|s| {
            let correct = predict(s.score) == s.label;
            let reward = if correct {
                if s.label {
                    v.v11
                } else {
                    v.v00
                }
            } else {
                0.0
            };
            (reward, s.weight)
        })
        .collect()
}
