//! JSON report schemas and atomic output writing.
//!
//! Field names are part of the tool's interface; reports always echo every
//! effective parameter so a run is reproducible from its own output.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

#[derive(Serialize)]
pub struct EvaluateReport {
    pub command: &'static str,
    pub input: String,
    pub n: usize,
    pub pi0: f64,
    pub pi0_source: &'static str,
    pub seed: u64,
    pub metrics: Vec<MetricReport>,
}

#[derive(Serialize)]
pub struct MetricReport {
    pub metric: String,
    pub value: f64,
    pub units: &'static str,
    pub params: MetricParams,
    pub ci: Option<CiReport>,
    pub verify: Option<VerifyReport>,
}

#[derive(Serialize, Default)]
pub struct MetricParams {
    pub tau: Option<f64>,
    pub c: Option<f64>,
    pub pi: Option<f64>,
    pub interval: Option<[f64; 2]>,
    pub logit_width: Option<f64>,
    pub gamma: Option<f64>,
    pub n_pos: Option<usize>,
    pub n_neg: Option<usize>,
    pub tie_mass: Option<f64>,
}

#[derive(Serialize)]
pub struct CiReport {
    pub level: f64,
    pub lo: f64,
    pub hi: f64,
    pub replicates: usize,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub oracle: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub nodes: usize,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct CompareReport {
    pub command: &'static str,
    pub input: String,
    pub c: f64,
    pub seed: u64,
    pub groups: [GroupReport; 2],
    pub sharpness_calibration: SharpnessCalibration,
    pub mechanism_label_shift: MechanismLabelShift,
}

#[derive(Serialize)]
pub struct GroupReport {
    pub name: String,
    pub n: usize,
    pub pi0: f64,
    pub auc: f64,
    pub expected_net_benefit: f64,
}

#[derive(Serialize)]
pub struct SharpnessCalibration {
    pub interval: [f64; 2],
    pub delta_total: Delta,
    pub sharpness: Delta,
    pub calibration: Delta,
}

#[derive(Serialize)]
pub struct MechanismLabelShift {
    pub applicable: bool,
    pub reason: Option<String>,
    pub interval: Option<[f64; 2]>,
    pub delta_total: Option<Delta>,
    pub mechanism: Option<Delta>,
    pub label_shift: Option<Delta>,
}

#[derive(Serialize)]
pub struct Delta {
    pub value: f64,
    pub ci: Option<CiReport>,
}

#[derive(Serialize)]
pub struct GenerateSidecar {
    pub command: &'static str,
    pub output: String,
    pub n: usize,
    pub pi0: f64,
    pub mu0: f64,
    pub mu1: f64,
    pub sigma: f64,
    pub calib_slope: f64,
    pub calib_intercept: f64,
    pub seed: u64,
    pub group: Option<String>,
    pub empirical_prevalence: f64,
}

/// Serializes a report as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Writes bytes to `path` atomically (temp file in the same directory, then
/// rename), or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let mut tmp = match dir {
                Some(dir) => tempfile::NamedTempFile::new_in(dir),
                None => tempfile::NamedTempFile::new_in("."),
            }
            .context("creating temp file")?;
            tmp.write_all(bytes)?;
            tmp.persist(path)
                .with_context(|| format!("writing {}", path.display()))?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}
