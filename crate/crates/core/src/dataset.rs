//! Scored, labeled evaluation data.
//!
//! A [`Dataset`] is an immutable sequence of [`Sample`]s plus a stored class
//! prevalence. The prevalence is estimated from the data by default but can
//! be supplied explicitly. Reweighting to a different prevalence multiplies
//! sample weights by importance ratios and never resamples, so every metric
//! downstream stays deterministic.

use std::collections::BTreeSet;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::odds::importance_weight_raw;
use crate::sum::Accumulator;

/// One scored, labeled observation.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub score: f64,
    pub label: bool,
    pub group: Option<String>,
    pub weight: f64,
}

impl Sample {
    pub fn new(score: f64, label: bool) -> Self {
        Self {
            score,
            label,
            group: None,
            weight: 1.0,
        }
    }

    pub fn weighted(score: f64, label: bool, weight: f64) -> Self {
        Self {
            score,
            label,
            group: None,
            weight,
        }
    }

    fn validate(&self, row: usize) -> Result<()> {
        if !self.score.is_finite() || !(0.0..=1.0).contains(&self.score) {
            return Err(Error::CsvRow {
                row,
                message: format!("score out of range [0,1]: {}", self.score),
            });
        }
        if !self.weight.is_finite() || self.weight <= 0.0 {
            return Err(Error::CsvRow {
                row,
                message: format!("weight must be positive, got {}", self.weight),
            });
        }
        Ok(())
    }
}

/// Immutable evaluation set with its class prevalence.
#[derive(Debug, Clone)]
pub struct Dataset {
    samples: Vec<Sample>,
    pi0: f64,
    total_weight: f64,
}

impl Dataset {
    /// Builds a dataset, estimating the prevalence from the weighted labels.
    ///
    /// Requires at least one sample of each label so the prevalence is
    /// interior.
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        let (total, positive) = validate_samples(&samples)?;
        let pi0 = positive / total;
        if !(pi0 > 0.0 && pi0 < 1.0) {
            return Err(Error::SingleClass);
        }
        Ok(Self {
            samples,
            pi0,
            total_weight: total,
        })
    }

    /// Builds a dataset with an explicitly supplied prevalence.
    pub fn with_pi0(samples: Vec<Sample>, pi0: f64) -> Result<Self> {
        if !pi0.is_finite() || pi0 <= 0.0 || pi0 >= 1.0 {
            return Err(Error::OpenUnitInterval(pi0));
        }
        let (total, positive) = validate_samples(&samples)?;
        if positive == 0.0 || positive == total {
            return Err(Error::SingleClass);
        }
        Ok(Self {
            samples,
            pi0,
            total_weight: total,
        })
    }

    /// Internal constructor for derived datasets (reweighted, recalibrated,
    /// balanced views) that may carry zero weights or endpoint prevalences.
    pub(crate) fn from_parts(samples: Vec<Sample>, pi0: f64) -> Self {
        let mut total = Accumulator::new();
        for s in &samples {
            total.add(s.weight);
        }
        Self {
            samples,
            pi0,
            total_weight: total.total(),
        }
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// The stored prevalence (estimated at construction unless overridden).
    pub fn pi0(&self) -> f64 {
        self.pi0
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Weighted mean of the labels.
    pub fn empirical_prevalence(&self) -> f64 {
        let mut num = Accumulator::new();
        for s in &self.samples {
            if s.label {
                num.add(s.weight);
            }
        }
        num.total() / self.total_weight
    }

    /// Importance-reweights every sample toward target prevalence `pi`.
    ///
    /// The result carries `pi` as its prevalence. At `pi` of 0 or 1 one
    /// class is zero-weighted and the result is degenerate by construction.
    pub fn reweight(&self, pi: f64) -> Result<Dataset> {
        if !pi.is_finite() || !(0.0..=1.0).contains(&pi) {
            return Err(Error::ProbabilityRange(pi));
        }
        let samples = self
            .samples
            .iter()
            .map(|s| Sample {
                weight: s.weight * importance_weight_raw(self.pi0, pi, s.label),
                ..s.clone()
            })
            .collect();
        Ok(Dataset::from_parts(samples, pi))
    }

    /// Distinct group tags, sorted.
    pub fn group_names(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self
            .samples
            .iter()
            .filter_map(|s| s.group.as_deref())
            .collect();
        set.into_iter().map(str::to_owned).collect()
    }

    /// Extracts one group as an independent dataset with its own empirical
    /// prevalence.
    pub fn subgroup(&self, name: &str) -> Result<Dataset> {
        let samples: Vec<Sample> = self
            .samples
            .iter()
            .filter(|s| s.group.as_deref() == Some(name))
            .cloned()
            .collect();
        if samples.is_empty() {
            return Err(Error::UnknownGroup(name.to_owned()));
        }
        Dataset::new(samples)
    }

    /// Returns a copy with every sample tagged with `group`.
    pub fn tagged(&self, group: &str) -> Dataset {
        let samples = self
            .samples
            .iter()
            .map(|s| Sample {
                group: Some(group.to_owned()),
                ..s.clone()
            })
            .collect();
        Dataset {
            samples,
            pi0: self.pi0,
            total_weight: self.total_weight,
        }
    }

    /// Concatenates datasets; prevalence is re-estimated from the union.
    pub fn concat(parts: &[&Dataset]) -> Result<Dataset> {
        let samples: Vec<Sample> = parts
            .iter()
            .flat_map(|d| d.samples.iter().cloned())
            .collect();
        Dataset::new(samples)
    }

    /// Reads `score,label[,group][,weight]` records.
    pub fn read_csv<R: Read>(reader: R) -> Result<Dataset> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let mut score_col = None;
        let mut label_col = None;
        let mut group_col = None;
        let mut weight_col = None;
        for (i, name) in headers.iter().enumerate() {
            match name.trim() {
                "score" => score_col = Some(i),
                "label" => label_col = Some(i),
                "group" => group_col = Some(i),
                "weight" => weight_col = Some(i),
                other => {
                    return Err(Error::InvalidSpec(format!(
                        "unknown csv column {other:?}; expected score,label[,group][,weight]"
                    )))
                }
            }
        }
        let (score_col, label_col) = match (score_col, label_col) {
            (Some(s), Some(l)) => (s, l),
            _ => {
                return Err(Error::InvalidSpec(
                    "csv header must name both `score` and `label` columns".into(),
                ))
            }
        };

        let mut samples = Vec::new();
        for (idx, record) in rdr.records().enumerate() {
            let row = idx + 1;
            let record = record?;
            let field = |col: usize| -> Result<&str> {
                record.get(col).ok_or_else(|| Error::CsvRow {
                    row,
                    message: "missing field".into(),
                })
            };
            let score: f64 = field(score_col)?
                .trim()
                .parse()
                .map_err(|_| Error::CsvRow {
                    row,
                    message: format!("malformed score {:?}", field(score_col).unwrap_or("")),
                })?;
            let label = match field(label_col)?.trim() {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::CsvRow {
                        row,
                        message: format!("label must be 0 or 1, got {other:?}"),
                    })
                }
            };
            let group = match group_col {
                Some(col) => {
                    let g = field(col)?;
                    if g.is_empty() {
                        None
                    } else {
                        Some(g.to_owned())
                    }
                }
                None => None,
            };
            let weight = match weight_col {
                Some(col) => field(col)?.trim().parse().map_err(|_| Error::CsvRow {
                    row,
                    message: format!("malformed weight {:?}", field(col).unwrap_or("")),
                })?,
                None => 1.0,
            };
            let sample = Sample {
                score,
                label,
                group,
                weight,
            };
            sample.validate(row)?;
            samples.push(sample);
        }
        Dataset::new(samples)
    }

    /// Writes records back out; emits the optional columns only when used.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let has_group = self.samples.iter().any(|s| s.group.is_some());
        let has_weight = self.samples.iter().any(|s| s.weight != 1.0);
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec!["score", "label"];
        if has_group {
            header.push("group");
        }
        if has_weight {
            header.push("weight");
        }
        wtr.write_record(&header)?;
        for s in &self.samples {
            let mut record = vec![
                format!("{}", s.score),
                if s.label { "1" } else { "0" }.into(),
            ];
            if has_group {
                record.push(s.group.clone().unwrap_or_default());
            }
            if has_weight {
                record.push(format!("{}", s.weight));
            }
            wtr.write_record(&record)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn validate_samples(samples: &[Sample]) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut total = Accumulator::new();
    let mut positive = Accumulator::new();
    for (i, s) in samples.iter().enumerate() {
        s.validate(i + 1)?;
        total.add(s.weight);
        if s.label {
            positive.add(s.weight);
        }
    }
    Ok((total.total(), positive.total()))
}
