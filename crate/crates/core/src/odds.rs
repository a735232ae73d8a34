//! Scalar odds algebra.
//!
//! Odds multiplication `a ⊗ b = ab / (ab + (1-a)(1-b))` is addition in
//! log-odds space. Together with `logit`/`sigmoid`, clipping, importance
//! weights and the prior-adjusted score it forms the arithmetic layer every
//! metric in this crate is built on. All functions are pure.

use crate::error::{Error, Result};

/// A probability, score, prevalence or cost ratio in `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::ProbabilityRange(value))
        }
    }

    /// A probability strictly inside `(0,1)`.
    pub fn interior(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value < 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::OpenUnitInterval(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn complement(self) -> Self {
        Self(1.0 - self.0)
    }
}

impl std::fmt::Display for Probability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Natural-log odds of a probability.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogOdds(f64);

impl LogOdds {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::InvalidSpec(format!(
                "log-odds must be finite, got {value}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Odds multiplication, extended by continuity to endpoint operands.
///
/// `0.5` is the identity. `a ⊗ 0 = 0` and `a ⊗ 1 = 1` for interior `a`;
/// the complementary endpoint pairs `(0,1)` and `(1,0)` are 0/0 forms and
/// rejected.
pub fn odds_mul(a: Probability, b: Probability) -> Result<Probability> {
    odds_mul_raw(a.0, b.0).map(Probability)
}

pub(crate) fn odds_mul_raw(a: f64, b: f64) -> Result<f64> {
    // Exact identity short-circuits keep ties at 0.5 bit-stable.
    if a == 0.5 {
        return Ok(b);
    }
    if b == 0.5 {
        return Ok(a);
    }
    let num = a * b;
    let den = num + (1.0 - a) * (1.0 - b);
    if den == 0.0 {
        return Err(Error::UndefinedOdds { a, b });
    }
    Ok(num / den)
}

/// Log odds of an interior probability.
pub fn logit(p: Probability) -> Result<LogOdds> {
    if p.0 <= 0.0 || p.0 >= 1.0 {
        return Err(Error::OpenUnitInterval(p.0));
    }
    Ok(LogOdds(logit_raw(p.0)))
}

pub(crate) fn logit_raw(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// Inverse of `logit`.
pub fn sigmoid(x: LogOdds) -> Probability {
    Probability(sigmoid_raw(x.0))
}

pub(crate) fn sigmoid_raw(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Projection of `x` onto `[lo, hi]`.
pub fn clip(lo: Probability, hi: Probability, x: Probability) -> Result<Probability> {
    if lo.0 > hi.0 {
        return Err(Error::ClipBounds { lo: lo.0, hi: hi.0 });
    }
    Ok(Probability(clip_raw(lo.0, hi.0, x.0)))
}

pub(crate) fn clip_raw(lo: f64, hi: f64, x: f64) -> f64 {
    x.max(lo).min(hi)
}

/// Ratio reweighting a label-`y` sample from source prevalence `pi0` to
/// target prevalence `pi`: `(pi/pi0)^y ((1-pi)/(1-pi0))^(1-y)`.
pub fn importance_weight(pi0: Probability, pi: Probability, y: bool) -> Result<f64> {
    if pi0.0 <= 0.0 || pi0.0 >= 1.0 {
        return Err(Error::OpenUnitInterval(pi0.0));
    }
    Ok(importance_weight_raw(pi0.0, pi.0, y))
}

pub(crate) fn importance_weight_raw(pi0: f64, pi: f64, y: bool) -> f64 {
    if y {
        pi / pi0
    } else {
        (1.0 - pi) / (1.0 - pi0)
    }
}

/// The posterior `pi ⊗ (1-pi0) ⊗ s` that moves a score calibrated at
/// prevalence `pi0` to deployment prevalence `pi`.
///
/// Scores of exactly 0 or 1 are fixed points: no prior shift moves them.
/// With that convention the `pi`-endpoints follow by continuity in `pi`.
pub fn adjusted_score(s: Probability, pi0: Probability, pi: Probability) -> Result<Probability> {
    if pi0.0 <= 0.0 || pi0.0 >= 1.0 {
        return Err(Error::OpenUnitInterval(pi0.0));
    }
    Ok(Probability(adjusted_score_raw(s.0, pi0.0, pi.0)))
}

pub(crate) fn adjusted_score_raw(s: f64, pi0: f64, pi: f64) -> f64 {
    if s == 0.0 || s == 1.0 {
        return s;
    }
    if pi == pi0 {
        // exact identity; the odds round trip below could drift an ulp and
        // flip threshold ties
        return s;
    }
    if pi == 0.0 || pi == 1.0 {
        return pi;
    }
    // Interior everywhere, so neither product can hit a 0/0 form.
    let half = odds_mul_raw(1.0 - pi0, s).expect("interior operands");
    odds_mul_raw(pi, half).expect("interior operands")
}

/// Half-adjusted score `(1-pi0) ⊗ s`, the score moved to a balanced prior.
pub(crate) fn s_half_raw(s: f64, pi0: f64) -> f64 {
    if s == 0.0 || s == 1.0 {
        return s;
    }
    odds_mul_raw(1.0 - pi0, s).expect("interior operands")
}

/// Cost-weighted prior-adjusted decision: predict positive iff the adjusted
/// score reaches the cost ratio `c`. Ties at the threshold predict positive.
pub fn classify(s: Probability, pi0: Probability, pi: Probability, c: Probability) -> Result<bool> {
    if c.0 <= 0.0 || c.0 >= 1.0 {
        return Err(Error::OpenUnitInterval(c.0));
    }
    Ok(adjusted_score(s, pi0, pi)?.get() >= c.0)
}
