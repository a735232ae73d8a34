//! `clipscore`: cost-sensitive, label-shift-aware evaluation of scored
//! binary classifiers from CSV files.
//!
//! Outputs are pure functions of the input bytes, flags and seed: reports
//! are JSON with stable field order, curves are CSV, and file writes are
//! atomic. Exit codes: 0 success, 1 invalid input or configuration,
//! 2 a `--verify` cross-check exceeded its tolerance.

mod report;

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use clipscore::bootstrap::{bootstrap_ci, bootstrap_multi, percentile_interval, BootstrapSpec};
use clipscore::calibrate::{
    decompose_mechanism_labelshift, decompose_sharpness_calibration, pava_fit, recalibrate,
};
use clipscore::dataset::{Dataset, Sample};
use clipscore::generate::{generate, GeneratorSpec};
use clipscore::metrics::{self, MetricKind, MetricRequest};
use clipscore::odds::LogOdds;
use clipscore::ranking::{auc_roc, auc_shift_average};
use clipscore::scores::{
    bounded_brier, bounded_brier_pointwise, bounded_log, bounded_log_pointwise, dca_log,
    quadrature_expectation, wa_log, wa_log_pointwise, Measure, OracleKind, PrevalenceInterval,
};
use clipscore::sum::Accumulator;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use report::{
    CiReport, CompareReport, Delta, EvaluateReport, GenerateSidecar, GroupReport,
    MechanismLabelShift, MetricParams, MetricReport, SharpnessCalibration, VerifyReport,
};

#[derive(Parser)]
#[command(
    name = "clipscore",
    version,
    about = "Decision-theoretic classifier evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate metrics on a scored dataset and emit a JSON report.
    Evaluate(EvaluateArgs),
    /// Compare two groups: sharpness/calibration and mechanism/label-shift splits.
    Compare(CompareArgs),
    /// Emit prior-adjusted net benefit across a prevalence grid as CSV.
    Curve(CurveArgs),
    /// Generate a synthetic scored dataset with known calibration.
    Generate(GenerateArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Accuracy,
    BalancedAccuracy,
    NetBenefit,
    WeightedAccuracy,
    Pama,
    Pamnb,
    Pamwa,
    Auc,
    BoundedBrier,
    BoundedLog,
    DcaLog,
    WaLog,
}

impl MetricArg {
    fn name(self) -> &'static str {
        match self {
            Self::Accuracy => "accuracy",
            Self::BalancedAccuracy => "balanced-accuracy",
            Self::NetBenefit => "net-benefit",
            Self::WeightedAccuracy => "weighted-accuracy",
            Self::Pama => "pama",
            Self::Pamnb => "pamnb",
            Self::Pamwa => "pamwa",
            Self::Auc => "auc",
            Self::BoundedBrier => "bounded-brier",
            Self::BoundedLog => "bounded-log",
            Self::DcaLog => "dca-log",
            Self::WaLog => "wa-log",
        }
    }

    fn needs_interval(self) -> bool {
        matches!(
            self,
            Self::BoundedBrier | Self::BoundedLog | Self::DcaLog | Self::WaLog
        )
    }
}

#[derive(Args)]
struct EvaluateArgs {
    /// Input CSV with columns score,label[,group][,weight].
    input: PathBuf,
    /// Metric to evaluate; repeatable.
    #[arg(long = "metric", required = true)]
    metrics: Vec<MetricArg>,
    /// Decision threshold on the (adjusted) score.
    #[arg(long, default_value_t = 0.5)]
    tau: f64,
    /// Cost ratio: the calibrated probability at which treat/don't-treat break even.
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    /// Deployment prevalence for prior-adjusted metrics.
    #[arg(long, default_value_t = 0.5)]
    pi: f64,
    /// Prevalence bounds a:b for interval-averaged scores.
    #[arg(long)]
    interval: Option<String>,
    /// Override the prevalence estimated from the data.
    #[arg(long)]
    pi0: Option<f64>,
    /// Bootstrap replicate count; enables confidence intervals.
    #[arg(long)]
    bootstrap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Confidence level for bootstrap intervals.
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    /// Cross-check closed forms against the quadrature oracle
    /// (and AUC against its shift average); exit 2 on disagreement.
    #[arg(long)]
    verify: bool,
    /// Quadrature node count for --verify.
    #[arg(long, default_value_t = 2049)]
    nodes: usize,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Input CSV with a group column.
    input: PathBuf,
    /// First group (defaults to the alphabetically first of exactly two).
    #[arg(long)]
    group_a: Option<String>,
    /// Second group.
    #[arg(long)]
    group_b: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    /// Prevalence bounds a:b for the sharpness/calibration split.
    #[arg(long)]
    interval: String,
    /// Bootstrap replicate count; enables confidence intervals on deltas.
    #[arg(long)]
    bootstrap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    input: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    /// Prevalence bounds a:b for the grid.
    #[arg(long)]
    interval: String,
    /// Number of grid nodes, uniform in logit prevalence.
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// Override the prevalence estimated from the data.
    #[arg(long)]
    pi0: Option<f64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    pi0: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    mu0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    mu1: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Slope of the logit-affine miscalibration applied to the true posterior.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    calib_slope: f64,
    /// Intercept of the logit-affine miscalibration.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    calib_intercept: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tag every generated row with this group name.
    #[arg(long)]
    group: Option<String>,
    /// Output CSV path; a JSON sidecar is written next to it.
    #[arg(long, short)]
    output: PathBuf,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{}", serde_json::json!({ "error": format!("{err:#}") }));
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Generate(args) => cmd_generate(args),
    }
}

fn parse_interval(text: &str) -> Result<PrevalenceInterval> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("interval must be written a:b, got {text:?}"))?;
    let a: f64 = a.trim().parse().context("interval lower bound")?;
    let b: f64 = b.trim().parse().context("interval upper bound")?;
    Ok(PrevalenceInterval::new(a, b)?)
}

fn load_dataset(path: &Path, pi0: Option<f64>) -> Result<(Dataset, &'static str)> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let d = Dataset::read_csv(BufReader::new(file))
        .with_context(|| format!("reading {}", path.display()))?;
    match pi0 {
        Some(pi0) => Ok((Dataset::with_pi0(d.samples().to_vec(), pi0)?, "override")),
        None => Ok((d, "empirical")),
    }
}

fn bootstrap_spec(replicates: Option<usize>, level: f64, seed: u64) -> Option<BootstrapSpec> {
    replicates.map(|replicates| BootstrapSpec {
        replicates,
        level,
        seed,
    })
}

fn ci_report(
    rows: &[(f64, f64)],
    scale: f64,
    spec: Option<&BootstrapSpec>,
) -> Result<Option<CiReport>> {
    match spec {
        Some(spec) => {
            let ci = bootstrap_ci(rows, scale, spec)?;
            Ok(Some(CiReport {
                level: spec.level,
                lo: ci.lo,
                hi: ci.hi,
                replicates: spec.replicates,
            }))
        }
        None => Ok(None),
    }
}

fn oracle_verify(
    d: &Dataset,
    kind: OracleKind,
    iv: PrevalenceInterval,
    c: f64,
    nodes: usize,
    measure: Measure,
    got: f64,
) -> Result<VerifyReport> {
    let oracle = quadrature_expectation(d, kind, iv, c, nodes, measure)?;
    let residual = (got - oracle).abs();
    let tolerance = (1e-6 * oracle.abs()).max(1e-9);
    Ok(VerifyReport {
        oracle,
        residual,
        tolerance,
        nodes,
        pass: residual <= tolerance,
    })
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<ExitCode> {
    let (d, pi0_source) = load_dataset(&args.input, args.pi0)?;
    let interval = args.interval.as_deref().map(parse_interval).transpose()?;
    let spec = bootstrap_spec(args.bootstrap, args.level, args.seed);

    let mut reports = Vec::new();
    let mut verify_failed = false;
    for &metric in &args.metrics {
        if metric.needs_interval() && interval.is_none() {
            bail!("--interval a:b is required for {}", metric.name());
        }
        let r = evaluate_one(&d, metric, &args, interval, spec.as_ref())?;
        if let Some(v) = &r.verify {
            verify_failed |= !v.pass;
        }
        reports.push(r);
    }

    let doc = EvaluateReport {
        command: "evaluate",
        input: args.input.display().to_string(),
        n: d.len(),
        pi0: d.pi0(),
        pi0_source,
        seed: args.seed,
        metrics: reports,
    };
    report::write_output(args.output.as_deref(), report::to_json(&doc)?.as_bytes())?;
    Ok(if verify_failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn evaluate_one(
    d: &Dataset,
    metric: MetricArg,
    args: &EvaluateArgs,
    interval: Option<PrevalenceInterval>,
    spec: Option<&BootstrapSpec>,
) -> Result<MetricReport> {
    let set_kind = |kind: MetricKind| MetricRequest {
        kind,
        tau: args.tau,
        c: args.c,
        pi: args.pi,
    };
    let (value, units, params, ci, verify) = match metric {
        MetricArg::Accuracy
        | MetricArg::BalancedAccuracy
        | MetricArg::NetBenefit
        | MetricArg::WeightedAccuracy
        | MetricArg::Pama
        | MetricArg::Pamnb
        | MetricArg::Pamwa => {
            let (kind, units, params) = set_metric_meta(metric, args);
            let req = set_kind(kind);
            let value = metrics::evaluate(d, &req)?;
            let rows = metrics::pointwise(d, &req)?;
            (value, units, params, ci_report(&rows, 1.0, spec)?, None)
        }
        MetricArg::Auc => {
            let roc = auc_roc(d)?;
            let params = MetricParams {
                n_pos: Some(roc.n_pos),
                n_neg: Some(roc.n_neg),
                tie_mass: Some(roc.tie_mass),
                ..Default::default()
            };
            let ci = match spec {
                Some(spec) => Some(auc_bootstrap(d, spec)?),
                None => None,
            };
            let verify = if args.verify {
                let avg = auc_shift_average(d)?;
                let residual = (roc.auc - avg).abs();
                Some(VerifyReport {
                    oracle: avg,
                    residual,
                    tolerance: 1e-10,
                    nodes: 0,
                    pass: residual <= 1e-10,
                })
            } else {
                None
            };
            (
                roc.auc,
                "probability a positive outranks a negative",
                params,
                ci,
                verify,
            )
        }
        MetricArg::BoundedBrier => {
            let iv = interval.unwrap();
            let value = bounded_brier(d, iv)?;
            let rows = bounded_brier_pointwise(d, iv)?;
            let verify = if args.verify {
                Some(oracle_verify(
                    d,
                    OracleKind::Pama,
                    iv,
                    args.c,
                    args.nodes,
                    Measure::ProbabilityUniform,
                    value / iv.width(),
                )?)
            } else {
                None
            };
            let params = MetricParams {
                interval: Some([iv.a(), iv.b()]),
                ..Default::default()
            };
            (
                value,
                "mean adjusted accuracy times interval width",
                params,
                ci_report(&rows, 1.0, spec)?,
                verify,
            )
        }
        MetricArg::BoundedLog => {
            let iv = interval.unwrap();
            let value = bounded_log(d, iv)?;
            let rows = bounded_log_pointwise(d, iv)?;
            let verify = if args.verify {
                Some(oracle_verify(
                    d,
                    OracleKind::Pama,
                    iv,
                    args.c,
                    args.nodes,
                    Measure::LogitUniform,
                    value / iv.logit_width(),
                )?)
            } else {
                None
            };
            let params = MetricParams {
                interval: Some([iv.a(), iv.b()]),
                logit_width: Some(iv.logit_width()),
                ..Default::default()
            };
            (
                value,
                "mean adjusted accuracy times logit width",
                params,
                ci_report(&rows, 1.0, spec)?,
                verify,
            )
        }
        MetricArg::DcaLog => {
            let iv = interval.unwrap();
            let r = dca_log(d, iv, args.c)?;
            let verify = if args.verify {
                Some(oracle_verify(
                    d,
                    OracleKind::Pamnb,
                    iv,
                    args.c,
                    args.nodes,
                    Measure::LogitUniform,
                    r.value,
                )?)
            } else {
                None
            };
            let params = MetricParams {
                c: Some(args.c),
                interval: Some([iv.a(), iv.b()]),
                logit_width: Some(iv.logit_width()),
                gamma: Some(r.gamma),
                ..Default::default()
            };
            let ci = ci_report(&r.per_sample, r.gamma, spec)?;
            (
                r.value,
                "true-positive equivalents per row",
                params,
                ci,
                verify,
            )
        }
        MetricArg::WaLog => {
            let iv = interval.unwrap();
            let value = wa_log(d, iv, args.c)?;
            let rows = wa_log_pointwise(d, iv, args.c)?;
            let verify = if args.verify {
                Some(oracle_verify(
                    d,
                    OracleKind::Pamwa,
                    iv,
                    args.c,
                    args.nodes,
                    Measure::LogitUniform,
                    value / iv.logit_width(),
                )?)
            } else {
                None
            };
            let params = MetricParams {
                c: Some(args.c),
                interval: Some([iv.a(), iv.b()]),
                logit_width: Some(iv.logit_width()),
                ..Default::default()
            };
            (
                value,
                "mean weighted accuracy times logit width",
                params,
                ci_report(&rows, 1.0, spec)?,
                verify,
            )
        }
    };
    Ok(MetricReport {
        metric: metric.name().to_owned(),
        value,
        units,
        params,
        ci,
        verify,
    })
}

fn set_metric_meta(
    metric: MetricArg,
    args: &EvaluateArgs,
) -> (MetricKind, &'static str, MetricParams) {
    let mut params = MetricParams::default();
    match metric {
        MetricArg::Accuracy => {
            params.tau = Some(args.tau);
            (MetricKind::Accuracy, "fraction correct", params)
        }
        MetricArg::BalancedAccuracy => {
            params.tau = Some(args.tau);
            (
                MetricKind::BalancedAccuracy,
                "fraction correct at balanced prevalence",
                params,
            )
        }
        MetricArg::NetBenefit => {
            params.tau = Some(args.tau);
            params.c = Some(args.c);
            (
                MetricKind::NetBenefit,
                "true-positive equivalents per row",
                params,
            )
        }
        MetricArg::WeightedAccuracy => {
            params.tau = Some(args.tau);
            params.c = Some(args.c);
            (
                MetricKind::WeightedAccuracy,
                "fraction of perfect score",
                params,
            )
        }
        MetricArg::Pama => {
            params.tau = Some(args.tau);
            params.pi = Some(args.pi);
            (
                MetricKind::Pama,
                "fraction correct at target prevalence",
                params,
            )
        }
        MetricArg::Pamnb => {
            params.c = Some(args.c);
            params.pi = Some(args.pi);
            (
                MetricKind::Pamnb,
                "true-positive equivalents per row",
                params,
            )
        }
        MetricArg::Pamwa => {
            params.tau = Some(args.tau);
            params.c = Some(args.c);
            params.pi = Some(args.pi);
            (MetricKind::Pamwa, "fraction of perfect score", params)
        }
        _ => unreachable!("set_metric_meta is only called for set metrics"),
    }
}

/// Bootstrap an AUC confidence interval by resampling rows and recomputing;
/// degenerate single-class replicates count as the tie value 0.5.
fn auc_bootstrap(d: &Dataset, spec: &BootstrapSpec) -> Result<CiReport> {
    let samples = d.samples();
    let n = samples.len();
    let series = bootstrap_multi(spec, 1, |rng: &mut ChaCha8Rng| {
        let drawn: Vec<Sample> = (0..n)
            .map(|_| samples[rng.random_range(0..n)].clone())
            .collect();
        let stat = match Dataset::new(drawn) {
            Ok(resampled) => auc_roc(&resampled).map(|r| r.auc).unwrap_or(0.5),
            Err(_) => 0.5,
        };
        vec![stat]
    })?;
    let (lo, hi) = percentile_interval(&series[0], spec.level);
    Ok(CiReport {
        level: spec.level,
        lo,
        hi,
        replicates: spec.replicates,
    })
}

fn cmd_compare(args: CompareArgs) -> Result<ExitCode> {
    let (d, _) = load_dataset(&args.input, None)?;
    let iv = parse_interval(&args.interval)?;
    let names = d.group_names();
    let (name_a, name_b) = match (&args.group_a, &args.group_b) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        (None, None) => {
            if names.len() != 2 {
                bail!(
                    "input has {} groups ({:?}); select exactly two with --group-a/--group-b",
                    names.len(),
                    names
                );
            }
            (names[0].clone(), names[1].clone())
        }
        _ => bail!("give both --group-a and --group-b, or neither"),
    };
    if name_a == name_b {
        bail!("the two groups must differ");
    }
    let da = d.subgroup(&name_a)?;
    let db = d.subgroup(&name_b)?;
    let spec = bootstrap_spec(args.bootstrap, args.level, args.seed);

    let sharp = decompose_sharpness_calibration(&da, &db, iv, args.c)?;
    let mech = match decompose_mechanism_labelshift(&da, &db, args.c) {
        Ok(r) => Some(r),
        Err(clipscore::Error::EqualPrevalences) => None,
        Err(e) => return Err(e.into()),
    };

    // joint within-group resampling: one index draw per group per replicate
    // feeds every delta, so additivity holds replicate by replicate
    let cis = match spec.as_ref() {
        Some(spec) => {
            let rows_a = group_rows(&da, iv, args.c, mech.as_ref().map(|m| m.interval))?;
            let rows_b = group_rows(&db, iv, args.c, mech.as_ref().map(|m| m.interval))?;
            let n_stats = if mech.is_some() { 6 } else { 3 };
            let series = bootstrap_multi(spec, n_stats, |rng| {
                let ma = rows_a.resample(rng);
                let mb = rows_b.resample(rng);
                let total = ma.total - mb.total;
                let sharpness = ma.sharp - mb.sharp;
                let mut stats = vec![total, sharpness, total - sharpness];
                if let (Some(mech_a), Some(mech_b)) = (ma.mech, mb.mech) {
                    let mech_delta = mech_a - mech_b;
                    let own_delta = ma.own - mb.own;
                    stats.extend([mech_delta, own_delta, own_delta - mech_delta]);
                }
                stats
            })?;
            Some(
                series
                    .iter()
                    .map(|s| {
                        let (lo, hi) = percentile_interval(s, spec.level);
                        CiReport {
                            level: spec.level,
                            lo,
                            hi,
                            replicates: spec.replicates,
                        }
                    })
                    .collect::<Vec<_>>(),
            )
        }
        None => None,
    };
    let mut cis = cis.map(std::collections::VecDeque::from);
    let mut next_ci = move || cis.as_mut().and_then(|c| c.pop_front());

    let (sharpness, calibration) = sharp.part_values();
    let sharp_report = SharpnessCalibration {
        interval: [iv.a(), iv.b()],
        delta_total: Delta {
            value: sharp.delta_total,
            ci: next_ci(),
        },
        sharpness: Delta {
            value: sharpness,
            ci: next_ci(),
        },
        calibration: Delta {
            value: calibration,
            ci: next_ci(),
        },
    };
    let mech_report = match &mech {
        Some(m) => {
            let (mechanism, label_shift) = m.part_values();
            MechanismLabelShift {
                applicable: true,
                reason: None,
                interval: Some([m.interval.a(), m.interval.b()]),
                mechanism: Some(Delta {
                    value: mechanism,
                    ci: next_ci(),
                }),
                delta_total: Some(Delta {
                    value: m.delta_total,
                    ci: next_ci(),
                }),
                label_shift: Some(Delta {
                    value: label_shift,
                    ci: next_ci(),
                }),
            }
        }
        None => MechanismLabelShift {
            applicable: false,
            reason: Some("group prevalences are equal".into()),
            interval: None,
            delta_total: None,
            mechanism: None,
            label_shift: None,
        },
    };

    let doc = CompareReport {
        command: "compare",
        input: args.input.display().to_string(),
        c: args.c,
        seed: args.seed,
        groups: [
            group_report(&name_a, &da, iv, args.c)?,
            group_report(&name_b, &db, iv, args.c)?,
        ],
        sharpness_calibration: sharp_report,
        mechanism_label_shift: mech_report,
    };
    report::write_output(args.output.as_deref(), report::to_json(&doc)?.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn group_report(name: &str, d: &Dataset, iv: PrevalenceInterval, c: f64) -> Result<GroupReport> {
    Ok(GroupReport {
        name: name.to_owned(),
        n: d.len(),
        pi0: d.pi0(),
        auc: auc_roc(d)?.auc,
        expected_net_benefit: dca_log(d, iv, c)?.value,
    })
}

/// Row-aligned loss vectors for one group, plus the scales that turn their
/// means into score values.
struct GroupRows {
    total: Vec<(f64, f64)>,
    sharp: Vec<(f64, f64)>,
    own: Vec<(f64, f64)>,
    mech: Option<Vec<(f64, f64)>>,
    gamma_user: f64,
    gamma_mech: f64,
}

struct GroupMeans {
    total: f64,
    sharp: f64,
    own: f64,
    mech: Option<f64>,
}

impl GroupRows {
    fn resample(&self, rng: &mut ChaCha8Rng) -> GroupMeans {
        let n = self.total.len();
        let mut acc: [(Accumulator, Accumulator); 4] = Default::default();
        for _ in 0..n {
            let i = rng.random_range(0..n);
            for (slot, rows) in [
                (0, Some(&self.total)),
                (1, Some(&self.sharp)),
                (2, Some(&self.own)),
                (3, self.mech.as_ref()),
            ] {
                if let Some(rows) = rows {
                    let (loss, w) = rows[i];
                    acc[slot].0.add(loss * w);
                    acc[slot].1.add(w);
                }
            }
        }
        let mean = |i: usize| acc[i].0.total() / acc[i].1.total();
        GroupMeans {
            total: self.gamma_user * mean(0),
            sharp: self.gamma_user * mean(1),
            own: mean(2),
            mech: self.mech.as_ref().map(|_| self.gamma_mech * mean(3)),
        }
    }
}

fn group_rows(
    d: &Dataset,
    iv: PrevalenceInterval,
    c: f64,
    mech_iv: Option<PrevalenceInterval>,
) -> Result<GroupRows> {
    let user = dca_log(d, iv, c)?;
    let recal = recalibrate(d, &pava_fit(d));
    let sharp = dca_log(&recal, iv, c)?;
    let own = metrics::pointwise(
        d,
        &MetricRequest {
            pi: d.pi0(),
            c,
            ..MetricRequest::new(MetricKind::Pamnb)
        },
    )?;
    let (mech, gamma_mech) = match mech_iv {
        Some(miv) => {
            let r = dca_log(d, miv, c)?;
            (Some(r.per_sample), r.gamma)
        }
        None => (None, 0.0),
    };
    Ok(GroupRows {
        total: user.per_sample,
        sharp: sharp.per_sample,
        own,
        mech,
        gamma_user: user.gamma,
        gamma_mech,
    })
}

fn cmd_curve(args: CurveArgs) -> Result<ExitCode> {
    let (d, _) = load_dataset(&args.input, args.pi0)?;
    let iv = parse_interval(&args.interval)?;
    if args.grid < 2 {
        bail!("--grid must be at least 2");
    }
    let names = d.group_names();
    let groups: Vec<(String, Dataset)> = if names.is_empty() {
        vec![("pamnb".to_owned(), d)]
    } else {
        names
            .into_iter()
            .map(|g| {
                let sub = d.subgroup(&g)?;
                Ok((format!("pamnb_{g}"), sub))
            })
            .collect::<Result<_>>()?
    };

    let la = clipscore::odds::logit(clipscore::Probability::new(iv.a())?)?.get();
    let lb = clipscore::odds::logit(clipscore::Probability::new(iv.b())?)?.get();
    let mut out = Vec::new();
    {
        let mut wtr = csv::Writer::from_writer(&mut out);
        let mut header = vec!["pi".to_owned(), "logit_pi".to_owned()];
        header.extend(groups.iter().map(|(name, _)| name.clone()));
        wtr.write_record(&header)?;
        for k in 0..args.grid {
            let l = if k == args.grid - 1 {
                lb
            } else {
                la + k as f64 * (lb - la) / (args.grid - 1) as f64
            };
            let pi = clipscore::odds::sigmoid(LogOdds::new(l)?).get();
            let mut record = vec![format!("{pi}"), format!("{l}")];
            for (_, sub) in &groups {
                record.push(format!("{}", metrics::pamnb(sub, pi, args.c)?));
            }
            wtr.write_record(&record)?;
        }
        wtr.flush()?;
    }
    report::write_output(args.output.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    let spec = GeneratorSpec {
        n: args.n,
        pi0: args.pi0,
        mu0: args.mu0,
        mu1: args.mu1,
        sigma: args.sigma,
        calib_slope: args.calib_slope,
        calib_intercept: args.calib_intercept,
        seed: args.seed,
    };
    let mut d = generate(&spec)?;
    if let Some(group) = &args.group {
        d = d.tagged(group);
    }
    let mut csv_bytes = Vec::new();
    d.write_csv(&mut csv_bytes)?;
    report::write_output(Some(&args.output), &csv_bytes)?;

    let sidecar = GenerateSidecar {
        command: "generate",
        output: args.output.display().to_string(),
        n: args.n,
        pi0: args.pi0,
        mu0: args.mu0,
        mu1: args.mu1,
        sigma: args.sigma,
        calib_slope: args.calib_slope,
        calib_intercept: args.calib_intercept,
        seed: args.seed,
        group: args.group.clone(),
        empirical_prevalence: d.empirical_prevalence(),
    };
    let sidecar_path = PathBuf::from(format!("{}.meta.json", args.output.display()));
    report::write_output(Some(&sidecar_path), report::to_json(&sidecar)?.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}
