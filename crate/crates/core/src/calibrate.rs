//! Isotonic recalibration and additive two-group decompositions.
//!
//! `pava_fit` computes the weighted isotonic regression of labels on scores
//! (pool adjacent violators), giving the recalibrated score that is exactly
//! calibrated on the evaluation set. The decompositions split a two-group
//! difference in expected net benefit either into sharpness vs calibration
//! (via in-sample recalibration) or into mechanism vs label shift (via the
//! interval spanned by the two group prevalences).

use std::io::{Read, Write};

use crate::dataset::{Dataset, Sample};
use crate::error::{Error, Result};
use crate::metrics::pamnb;
use crate::scores::{dca_log, PrevalenceInterval};

/// A nondecreasing step function from score to calibrated probability.
///
/// Queries below or above the fitted range clamp to the end levels; equal
/// scores always map to equal levels.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationMap {
    breakpoints: Vec<f64>,
    levels: Vec<f64>,
}

impl CalibrationMap {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn apply(&self, score: f64) -> f64 {
        let idx = self.breakpoints.partition_point(|b| *b <= score);
        if idx == 0 {
            self.levels[0]
        } else {
            self.levels[idx - 1]
        }
    }

    /// `breakpoint,level` rows.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(["breakpoint", "level"])?;
        for (b, l) in self.breakpoints.iter().zip(&self.levels) {
            wtr.write_record([format!("{b}"), format!("{l}")])?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(reader);
        let mut breakpoints = Vec::new();
        let mut levels = Vec::new();
        for (idx, record) in rdr.records().enumerate() {
            let row = idx + 1;
            let record = record?;
            let parse = |field: Option<&str>| -> Result<f64> {
                field
                    .and_then(|f| f.trim().parse().ok())
                    .ok_or_else(|| Error::CsvRow {
                        row,
                        message: "malformed number".into(),
                    })
            };
            breakpoints.push(parse(record.get(0))?);
            levels.push(parse(record.get(1))?);
        }
        if breakpoints.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) || levels.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpec(
                "calibration map must have increasing breakpoints and nondecreasing levels".into(),
            ));
        }
        Ok(Self {
            breakpoints,
            levels,
        })
    }
}

/// Weighted isotonic regression of labels on scores.
///
/// Samples are sorted by score, exact score ties are pooled first, and
/// adjacent violators are merged by weighted averaging until the levels are
/// nondecreasing. The result minimizes weighted squared error among all
/// monotone functions of the score.
pub fn pava_fit(d: &Dataset) -> CalibrationMap {
    let mut order: Vec<&Sample> = d.samples().iter().collect();
    order.sort_by(|a, b| a.score.total_cmp(&b.score));

    // pre-pool equal scores
    let mut pooled: Vec<(f64, f64, f64)> = Vec::new(); // score, label mean, weight
    let mut i = 0;
    while i < order.len() {
        let score = order[i].score;
        let mut w = 0.0;
        let mut wy = 0.0;
        while i < order.len() && order[i].score == score {
            w += order[i].weight;
            wy += if order[i].label { order[i].weight } else { 0.0 };
            i += 1;
        }
        pooled.push((score, wy / w, w));
    }

    // stack of merged blocks: (start index into pooled, mean, weight)
    let mut stack: Vec<(usize, f64, f64)> = Vec::new();
    for (idx, &(_, mean, weight)) in pooled.iter().enumerate() {
        let mut block = (idx, mean, weight);
        while let Some(&(start, prev_mean, prev_w)) = stack.last() {
            if prev_mean <= block.1 {
                break;
            }
            stack.pop();
            let w = prev_w + block.2;
            block = (start, (prev_mean * prev_w + block.1 * block.2) / w, w);
        }
        stack.push(block);
    }

    let breakpoints: Vec<f64> = pooled.iter().map(|p| p.0).collect();
    let mut levels = vec![0.0; pooled.len()];
    for (bi, &(start, mean, _)) in stack.iter().enumerate() {
        let end = stack.get(bi + 1).map_or(pooled.len(), |b| b.0);
        for level in &mut levels[start..end] {
            *level = mean;
        }
    }
    CalibrationMap {
        breakpoints,
        levels,
    }
}

/// Replaces every score by its mapped value; weights, labels and the stored
/// prevalence are unchanged.
pub fn recalibrate(d: &Dataset, map: &CalibrationMap) -> Dataset {
    let samples = d
        .samples()
        .iter()
        .map(|s| Sample {
            score: map.apply(s.score),
            ..s.clone()
        })
        .collect();
    Dataset::from_parts(samples, d.pi0())
}

/// The two named components of a two-group difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecompositionParts {
    SharpnessCalibration { sharpness: f64, calibration: f64 },
    MechanismLabelShift { mechanism: f64, label_shift: f64 },
}

/// An additive split `delta_total = part1 + part2` of a group difference in
/// expected net benefit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionReport {
    pub delta_total: f64,
    pub parts: DecompositionParts,
    pub interval: PrevalenceInterval,
    pub c: f64,
}

impl DecompositionReport {
    pub fn part_values(&self) -> (f64, f64) {
        match self.parts {
            DecompositionParts::SharpnessCalibration {
                sharpness,
                calibration,
            } => (sharpness, calibration),
            DecompositionParts::MechanismLabelShift {
                mechanism,
                label_shift,
            } => (mechanism, label_shift),
        }
    }
}

/// Splits the expected-net-benefit gap between two groups into the part each
/// group's score ordering could ever achieve (sharpness, measured after
/// in-sample isotonic recalibration of each group) and the remainder lost to
/// miscalibration.
pub fn decompose_sharpness_calibration(
    da: &Dataset,
    db: &Dataset,
    iv: PrevalenceInterval,
    c: f64,
) -> Result<DecompositionReport> {
    let va = dca_log(da, iv, c)?.value;
    let vb = dca_log(db, iv, c)?.value;
    let va_star = dca_log(&recalibrate(da, &pava_fit(da)), iv, c)?.value;
    let vb_star = dca_log(&recalibrate(db, &pava_fit(db)), iv, c)?.value;

    let delta_total = va - vb;
    let sharpness = va_star - vb_star;
    let calibration = delta_total - sharpness;
    let four_term = (va - va_star) + (vb_star - vb);
    assert!(
        (calibration - four_term).abs() <= 1e-10,
        "calibration gap assembled two ways disagrees: {calibration} vs {four_term}"
    );
    Ok(DecompositionReport {
        delta_total,
        parts: DecompositionParts::SharpnessCalibration {
            sharpness,
            calibration,
        },
        interval: iv,
        c,
    })
}

/// Splits the net-benefit gap at each group's own prevalence into a
/// mechanism difference (both groups compared across the same prevalence
/// range) and the label-shift remainder. The range is fixed to the two group
/// prevalences; equal prevalences make the split inapplicable.
pub fn decompose_mechanism_labelshift(
    da: &Dataset,
    db: &Dataset,
    c: f64,
) -> Result<DecompositionReport> {
    let (pa, pb) = (da.pi0(), db.pi0());
    if pa == pb {
        return Err(Error::EqualPrevalences);
    }
    let iv = PrevalenceInterval::new(pa.min(pb), pa.max(pb))?;

    let ea = dca_log(da, iv, c)?.value;
    let eb = dca_log(db, iv, c)?.value;
    let ka = pamnb(da, pa, c)?;
    let kb = pamnb(db, pb, c)?;

    let delta_total = ka - kb;
    let mechanism = ea - eb;
    let label_shift = delta_total - mechanism;
    let four_term = (ka - ea) + (eb - kb);
    assert!(
        (label_shift - four_term).abs() <= 1e-10,
        "label-shift effect assembled two ways disagrees: {label_shift} vs {four_term}"
    );
    Ok(DecompositionReport {
        delta_total,
        parts: DecompositionParts::MechanismLabelShift {
            mechanism,
            label_shift,
        },
        interval: iv,
        c,
    })
}
