//! Rank statistics: AUC-ROC and its label-shift-average form.

use crate::dataset::{Dataset, Sample};
use crate::error::{Error, Result};
use crate::odds::s_half_raw;
use crate::sum::Accumulator;

/// AUC-ROC plus tie diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocResult {
    pub auc: f64,
    pub n_pos: usize,
    pub n_neg: usize,
    /// Weight fraction of (negative, positive) pairs with exactly equal
    /// scores.
    pub tie_mass: f64,
}

/// Weighted pairwise AUC: over all (negative, positive) pairs, the mean of
/// `1{s+ > s-} + 0.5 * 1{s+ = s-}` with multiplied weights. Ties use exact
/// score equality; an epsilon tolerance would silently change the statistic.
/// Computed in O(n log n) by sorting into tie blocks.
pub fn auc_roc(d: &Dataset) -> Result<RocResult> {
    let mut order: Vec<&Sample> = d.samples().iter().collect();
    order.sort_by(|a, b| a.score.total_cmp(&b.score));

    let mut w_pos = Accumulator::new();
    let mut w_neg = Accumulator::new();
    let mut n_pos = 0usize;
    let mut n_neg = 0usize;
    for s in &order {
        if s.label {
            n_pos += 1;
            w_pos.add(s.weight);
        } else {
            n_neg += 1;
            w_neg.add(s.weight);
        }
    }
    let (w_pos, w_neg) = (w_pos.total(), w_neg.total());
    if n_pos == 0 || n_neg == 0 || w_pos <= 0.0 || w_neg <= 0.0 {
        return Err(Error::SingleClass);
    }

    let mut wins = Accumulator::new();
    let mut ties = Accumulator::new();
    let mut neg_below = 0.0f64;
    let mut i = 0;
    while i < order.len() {
        let score = order[i].score;
        let mut block_pos = 0.0;
        let mut block_neg = 0.0;
        let mut j = i;
        while j < order.len() && order[j].score == score {
            if order[j].label {
                block_pos += order[j].weight;
            } else {
                block_neg += order[j].weight;
            }
            j += 1;
        }
        wins.add(block_pos * neg_below);
        ties.add(block_pos * block_neg);
        neg_below += block_neg;
        i = j;
    }

    let denom = w_pos * w_neg;
    Ok(RocResult {
        auc: (wins.total() + 0.5 * ties.total()) / denom,
        n_pos,
        n_neg,
        tie_mass: ties.total() / denom,
    })
}

/// AUC-ROC as prior-adjusted accuracy averaged across label shift.
///
/// Moves the data to a balanced prior (importance weights toward prevalence
/// 1/2, scores replaced by their half-adjusted values `z`), then averages
/// the prior-adjusted accuracy at prevalence `1 - t` over the exact discrete
/// distribution of `t` across the distinct `z` values. Each term equals
/// `pama(balanced view, 1 - t, 1/2)`; it is expanded here in score space
/// (`predict positive iff z >= t`) so that threshold ties are compared
/// value-to-value and stay exact. For a dataset whose distinct score values
/// match their weighted positive fraction, the result equals [`auc_roc`] up
/// to rounding; nothing is asserted for uncalibrated data.
pub fn auc_shift_average(d: &Dataset) -> Result<f64> {
    if d.pi0() <= 0.0 || d.pi0() >= 1.0 {
        return Err(Error::OpenUnitInterval(d.pi0()));
    }
    let pi0 = d.pi0();
    let mut rows: Vec<(f64, bool, f64)> = d
        .samples()
        .iter()
        .map(|s| {
            let z = s_half_raw(s.score, pi0);
            let wb = s.weight
                * if s.label {
                    0.5 / pi0
                } else {
                    0.5 / (1.0 - pi0)
                };
            (z, s.label, wb)
        })
        .collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut w_total = Accumulator::new();
    let mut pos_total = Accumulator::new();
    let mut any_pos = false;
    let mut any_neg = false;
    for &(_, y, w) in &rows {
        w_total.add(w);
        if y {
            any_pos = true;
            pos_total.add(w);
        } else {
            any_neg = true;
        }
    }
    if !any_pos || !any_neg {
        return Err(Error::SingleClass);
    }
    let w_total = w_total.total();
    let pos_total = pos_total.total();

    let mut expectation = Accumulator::new();
    let mut pos_below = 0.0f64;
    let mut neg_below = 0.0f64;
    let mut i = 0;
    while i < rows.len() {
        let t = rows[i].0;
        let mut block_mass = 0.0;
        let mut block_pos = 0.0;
        let mut block_neg = 0.0;
        let mut j = i;
        while j < rows.len() && rows[j].0 == t {
            let (_, y, w) = rows[j];
            block_mass += w;
            if y {
                block_pos += w;
            } else {
                block_neg += w;
            }
            j += 1;
        }
        // pama(balanced view, 1 - t, 1/2): positives weighted 2(1-t) are
        // correct iff z >= t, negatives weighted 2t are correct iff z < t
        let pos_ge = pos_total - pos_below;
        let term = 2.0 * ((1.0 - t) * pos_ge + t * neg_below) / w_total;
        expectation.add(block_mass / w_total * term);
        pos_below += block_pos;
        neg_below += block_neg;
        i = j;
    }
    Ok(expectation.total())
}
