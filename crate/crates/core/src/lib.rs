//! Decision-theoretic evaluation of probabilistic binary classifiers.
//!
//! The library evaluates scored, labeled data the way a deployment would
//! use it: thresholded decisions under asymmetric error costs, corrected
//! for known label shift, and averaged over a bounded range of deployment
//! prevalences when the prevalence is uncertain.
//!
//! Layers, bottom up:
//!
//! - [`odds`]: odds multiplication, logit/sigmoid, clipping, importance
//!   weights, the prior-adjusted score and decision rule.
//! - [`dataset`] / [`generate`]: CSV ingestion, importance reweighting,
//!   subgroups, and a synthetic generator with analytic calibration ground
//!   truth.
//! - [`metrics`]: the set-metric taxonomy (accuracy, net benefit, weighted
//!   accuracy, and their balanced and prior-adjusted forms).
//! - [`ranking`]: AUC-ROC with exact tie handling and its label-shift
//!   average form.
//! - [`scores`]: clipped scoring rules over a prevalence interval (bounded
//!   Brier and log scores, the expected-net-benefit log score, weighted
//!   accuracy log score) plus the quadrature oracle that certifies them.
//! - [`calibrate`]: isotonic recalibration and the sharpness/calibration
//!   and mechanism/label-shift decompositions.
//! - [`bootstrap`]: percentile confidence intervals over pointwise losses.

pub mod bootstrap;
pub mod calibrate;
pub mod dataset;
pub mod error;
pub mod generate;
pub mod metrics;
pub mod odds;
pub mod ranking;
pub mod scores;
pub mod sum;

pub use bootstrap::{bootstrap_ci, BootstrapSpec, ConfidenceInterval};
pub use calibrate::{
    decompose_mechanism_labelshift, decompose_sharpness_calibration, pava_fit, recalibrate,
    CalibrationMap, DecompositionParts, DecompositionReport,
};
pub use dataset::{Dataset, Sample};
pub use error::{Error, Result};
pub use generate::{generate, GeneratorSpec};
pub use metrics::{MetricKind, MetricRequest, ValueMatrix};
pub use odds::{LogOdds, Probability};
pub use ranking::{auc_roc, auc_shift_average, RocResult};
pub use scores::{
    bounded_brier, bounded_log, dca_log, pointwise_losses, quadrature_expectation, wa_log, Measure,
    OracleKind, PrevalenceInterval, ScoreReport,
};
