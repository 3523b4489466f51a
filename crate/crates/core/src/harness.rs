//! Synthetic drift experiments.
//!
//! The generator follows a random walk: `mu_t = mu_{t-1} + U`, with `U`
//! uniform on `[-s, s]^2`, and `w_t = R(theta) w_{t-1}`, with `theta`
//! uniform on `(-r, r)` radians. Instances are `x_t ~ N(mu_t, sigma^2 I)` and
//! labels are `y_t = w_t . x_t`, optionally plus Gaussian label noise
//! (off by default). Discrepancies to the target `D_{T+1}` are
//! computed analytically from the Gaussian second moments.
//!
//! Draw order per step is fixed: two uniforms for the mean step, one for the
//! rotation, then two normals for `x_t`, then one normal for label noise
//! when it is enabled.

use alloc::vec::Vec;

use crate::discrepancy::{analytic_gaussian_moments, spectral_discrepancy, DiscrepancyProfile, Provenance};
use crate::erm::{optimal_window, tracking_trial, aggregate_tracking, TrackingDrift, TrackingResult, WindowConfig};
use crate::error::{invalid, Result};
use crate::hypothesis::LinearHypothesis;
use crate::linalg::{mean_and_stderr, pairwise_sum};
use crate::loss::raw_squared;
use crate::online::{regret, run_online, OnlineConfig, Trace};
use crate::rng::{derive_seed, RngState};
use crate::sample::{LabeledExample, Sample};
use crate::weights::{bound_report, combine, default_lambda, solve_weights, BoundReport, QpInstance, SimplexWeights};

/// Number of trailing hypotheses averaged by the fixed-window baseline.
pub const FIXED_WINDOW: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DriftConfig {
    pub initial_mean: [f64; 2],
    pub initial_target: [f64; 2],
    /// Half-width `s` of the uniform mean step.
    pub mean_step: f64,
    /// Half-width `r` of the rotation angle, in radians.
    pub rotation: f64,
    /// Standard deviation of each instance coordinate.
    pub noise: f64,
    /// Standard deviation of additive label noise; 0 gives exact labels.
    pub label_noise: f64,
    pub horizon: usize,
    pub seed: u64,
    pub test_size: usize,
}

impl Default for DriftConfig {
    fn default() -> Self {
        Self {
            initial_mean: [0.0, 0.0],
            initial_target: [1.0, 0.0],
            mean_step: 0.1,
            rotation: 1.0,
            noise: 1.0,
            label_noise: 0.0,
            horizon: 0,
            seed: 0,
            test_size: 100,
        }
    }
}

impl DriftConfig {
    pub fn validate(&self) -> Result<()> {
        let finite = self.initial_mean.iter().chain(&self.initial_target).all(|v| v.is_finite());
        if !finite {
            return Err(invalid("initial mean and target must be finite"));
        }
        if !(self.mean_step >= 0.0) || !(self.rotation >= 0.0) {
            return Err(invalid("half-widths must be nonnegative"));
        }
        if !self.mean_step.is_finite() || !self.rotation.is_finite() {
            return Err(invalid("half-widths must be finite"));
        }
        if !(self.noise > 0.0) || !self.noise.is_finite() {
            return Err(invalid("noise must be finite and positive"));
        }
        if !(self.label_noise >= 0.0) || !self.label_noise.is_finite() {
            return Err(invalid("label noise must be finite and nonnegative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriftData {
    pub sample: Sample,
    pub test: Vec<LabeledExample>,
    pub profile: DiscrepancyProfile,
    /// `mu_1 .. mu_{T+1}`.
    pub means: Vec<[f64; 2]>,
    /// `w_1 .. w_{T+1}`.
    pub targets: Vec<[f64; 2]>,
}

fn rotate(w: [f64; 2], theta: f64) -> [f64; 2] {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    [c * w[0] - s * w[1], s * w[0] + c * w[1]]
}

fn labeled(cfg: &DriftConfig, mu: [f64; 2], w: [f64; 2], rng: &mut RngState) -> Result<LabeledExample> {
    let x = [mu[0] + cfg.noise * rng.standard_normal(), mu[1] + cfg.noise * rng.standard_normal()];
    let mut y = w[0] * x[0] + w[1] * x[1];
    if cfg.label_noise > 0.0 {
        y += cfg.label_noise * rng.standard_normal();
    }
    LabeledExample::new(x.to_vec(), y)
}

/// Draw `T` training examples, `test_size` test points from `D_{T+1}` and the
/// discrepancies `disc(D_t, D_{T+1})` over the `norm_bound`-ball, capped at
/// `loss_bound`.
pub fn generate_drift(
    cfg: &DriftConfig,
    norm_bound: f64,
    loss_bound: f64,
    rng: &mut RngState,
) -> Result<DriftData> {
    cfg.validate()?;
    let mut mu = cfg.initial_mean;
    let mut w = cfg.initial_target;
    let mut means = Vec::with_capacity(cfg.horizon + 1);
    let mut targets = Vec::with_capacity(cfg.horizon + 1);
    let mut examples = Vec::with_capacity(cfg.horizon);
    for t in 0..=cfg.horizon {
        mu[0] += rng.uniform(-cfg.mean_step, cfg.mean_step);
        mu[1] += rng.uniform(-cfg.mean_step, cfg.mean_step);
        w = rotate(w, rng.uniform(-cfg.rotation, cfg.rotation));
        means.push(mu);
        targets.push(w);
        if t < cfg.horizon {
            examples.push(labeled(cfg, mu, w, rng)?);
        }
    }
    let test = (0..cfg.test_size)
        .map(|_| labeled(cfg, mu, w, rng))
        .collect::<Result<Vec<_>>>()?;
    let variance = cfg.noise * cfg.noise;
    let target = analytic_gaussian_moments(&mu, variance)?;
    let raw = means[..cfg.horizon]
        .iter()
        .map(|m| spectral_discrepancy(&analytic_gaussian_moments(m, variance)?, &target, norm_bound))
        .collect::<Result<Vec<_>>>()?;
    Ok(DriftData {
        sample: Sample::new(examples)?,
        test,
        profile: DiscrepancyProfile::from_raw(raw, Provenance::Analytic, loss_bound)?,
        means,
        targets,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Algorithm {
    /// Uniform average of the last `min(100, T)` hypotheses.
    Fixed,
    /// Uniform average of all hypotheses.
    Regular,
    /// Discrepancy-weighted combination.
    Weighted,
}

impl Algorithm {
    /// In the lexicographic order of their names.
    pub const ALL: [Algorithm; 3] = [Algorithm::Fixed, Algorithm::Regular, Algorithm::Weighted];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Fixed => "fixed",
            Algorithm::Regular => "regular",
            Algorithm::Weighted => "weighted",
        }
    }
}

impl core::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExperimentConfig {
    pub drift: DriftConfig,
    pub online: OnlineConfig,
    /// Regulariser of the weight QP; `None` means `M / sqrt(T)`.
    pub lambda: Option<f64>,
}

impl ExperimentConfig {
    pub fn lambda_for(&self, horizon: usize) -> f64 {
        self.lambda.unwrap_or_else(|| default_lambda(self.online.loss.bound(), horizon))
    }
}

/// Test MSE of one algorithm in one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmScore {
    pub algorithm: Algorithm,
    pub mse: f64,
    /// MSE with each squared error capped at `M`.
    pub clipped_mse: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    /// Ordered as [`Algorithm::ALL`].
    pub scores: [AlgorithmScore; 3],
    pub weights: SimplexWeights,
    pub trace: Trace,
    pub data: DriftData,
    pub weighted: LinearHypothesis,
}

impl TrialOutcome {
    pub fn score(&self, algorithm: Algorithm) -> AlgorithmScore {
        self.scores[algorithm as usize]
    }
}

fn test_mse(h: &LinearHypothesis, test: &[LabeledExample], clip: f64) -> (f64, f64) {
    if test.is_empty() {
        return (0.0, 0.0);
    }
    let raw: Vec<f64> = test.iter().map(|e| raw_squared(h.apply(e.x()), e.y())).collect();
    let clipped: Vec<f64> = raw.iter().map(|v| v.min(clip)).collect();
    let n = test.len() as f64;
    (pairwise_sum(&raw) / n, pairwise_sum(&clipped) / n)
}

/// Run the on-line learner on one generated sample and score the three
/// conversions on the held-out points.
pub fn run_trial(cfg: &ExperimentConfig) -> Result<TrialOutcome> {
    let horizon = cfg.drift.horizon;
    if horizon == 0 {
        return Err(invalid("a trial needs at least one training example"));
    }
    let mut rng = RngState::new(cfg.drift.seed);
    let data = generate_drift(&cfg.drift, cfg.online.norm_bound, cfg.online.loss.bound(), &mut rng)?;
    let trace = run_online(&data.sample, &cfg.online)?;
    let qp = QpInstance::from_trace(&data.profile, &trace, cfg.lambda_for(horizon))?;
    let weights = solve_weights(&qp)?;
    let weighted = combine(trace.hypotheses(), &weights)?;
    let regular = combine(trace.hypotheses(), &SimplexWeights::uniform(horizon)?)?;
    let k = FIXED_WINDOW.min(horizon);
    let fixed = combine(&trace.hypotheses()[horizon - k..], &SimplexWeights::uniform(k)?)?;
    let clip = cfg.online.loss.bound();
    let score = |algorithm, h: &LinearHypothesis| {
        let (mse, clipped_mse) = test_mse(h, &data.test, clip);
        AlgorithmScore { algorithm, mse, clipped_mse }
    };
    Ok(TrialOutcome {
        scores: [
            score(Algorithm::Fixed, &fixed),
            score(Algorithm::Regular, &regular),
            score(Algorithm::Weighted, &weighted),
        ],
        weights,
        trace,
        data,
        weighted,
    })
}

/// Bound terms for one trial next to the realised test loss they bound.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundCheck {
    pub seed: u64,
    pub regret: f64,
    pub report: BoundReport,
    /// Mean clipped loss of the weighted hypothesis on the test points.
    pub test_loss: f64,
    pub raw_test_mse: f64,
    pub covered: bool,
}

pub fn bound_trial(cfg: &ExperimentConfig, confidence: f64) -> Result<BoundCheck> {
    let out = run_trial(cfg)?;
    let r = regret(&out.trace, &out.data.sample, &cfg.online)?;
    let report = bound_report(&out.weights, &out.data.profile, &out.trace, r, cfg.online.loss.bound(), confidence)?;
    let weighted = out.score(Algorithm::Weighted);
    Ok(BoundCheck {
        seed: cfg.drift.seed,
        regret: r,
        covered: weighted.clipped_mse <= report.expected_loss_bound,
        report,
        test_loss: weighted.clipped_mse,
        raw_test_mse: weighted.mse,
    })
}

/// Seed of trial `trial` at horizon `T`: `derive_seed(base, [T, trial])`.
pub fn trial_seed(base_seed: u64, horizon: usize, trial: usize) -> u64 {
    derive_seed(base_seed, &[horizon as u64, trial as u64])
}

pub fn experiment_trial(
    cfg: &ExperimentConfig,
    horizon: usize,
    trial: usize,
    base_seed: u64,
) -> Result<[AlgorithmScore; 3]> {
    let drift = DriftConfig { horizon, seed: trial_seed(base_seed, horizon, trial), ..cfg.drift };
    Ok(run_trial(&ExperimentConfig { drift, ..*cfg })?.scores)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExperimentRow {
    pub algorithm: Algorithm,
    pub horizon: usize,
    pub trials: usize,
    pub mean_mse: f64,
    pub stderr: f64,
    pub mean_clipped_mse: f64,
    pub seed: u64,
}

/// Per-algorithm means over trials (given in trial order) at one horizon.
pub fn aggregate_experiment(
    horizon: usize,
    base_seed: u64,
    outcomes: &[[AlgorithmScore; 3]],
) -> Result<Vec<ExperimentRow>> {
    if outcomes.is_empty() {
        return Err(invalid("at least one trial is required"));
    }
    Ok(Algorithm::ALL
        .iter()
        .map(|&algorithm| {
            let i = algorithm as usize;
            let mse: Vec<f64> = outcomes.iter().map(|o| o[i].mse).collect();
            let clipped: Vec<f64> = outcomes.iter().map(|o| o[i].clipped_mse).collect();
            let (mean_mse, stderr) = mean_and_stderr(&mse);
            ExperimentRow {
                algorithm,
                horizon,
                trials: outcomes.len(),
                mean_mse,
                stderr,
                mean_clipped_mse: pairwise_sum(&clipped) / clipped.len() as f64,
                seed: base_seed,
            }
        })
        .collect())
}

/// Rows sorted by `(T, algorithm name)`.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    horizons: &[usize],
    trials: usize,
    base_seed: u64,
) -> Result<Vec<ExperimentRow>> {
    if horizons.is_empty() {
        return Err(invalid("at least one horizon is required"));
    }
    let mut sorted = horizons.to_vec();
    sorted.sort_unstable();
    let mut rows = Vec::new();
    for &horizon in &sorted {
        let outcomes = (0..trials)
            .map(|k| experiment_trial(cfg, horizon, k, base_seed))
            .collect::<Result<Vec<_>>>()?;
        rows.extend(aggregate_experiment(horizon, base_seed, &outcomes)?);
    }
    Ok(rows)
}

/// Settings shared by every point of a tracking sweep. `window.drift` and
/// `window.m` are overwritten per point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub drift: TrackingDrift,
    pub window: WindowConfig,
    pub horizon: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let drift = TrackingDrift::default();
        Self {
            drift,
            window: WindowConfig {
                m: 1,
                d: 2.0,
                c: 1.0,
                c_prime: 1.0,
                drift: 0.0,
                confidence: 0.1,
                loss_bound: drift.loss.bound(),
            },
            horizon: 200,
            seed: 0,
        }
    }
}

/// The drift schedule and window used at discrepancy `delta`.
pub fn sweep_point(cfg: &SweepConfig, delta: f64) -> Result<(TrackingDrift, usize)> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(invalid("sweep discrepancies must be positive"));
    }
    let drift = TrackingDrift { discrepancy: delta, ..cfg.drift };
    drift.step_angle()?;
    let m = optimal_window(&WindowConfig { drift: delta, ..cfg.window }, cfg.horizon)?;
    Ok((drift, m))
}

/// One [`TrackingResult`] per discrepancy, at the optimal window.
pub fn tracking_sweep(cfg: &SweepConfig, deltas: &[f64], trials: usize) -> Result<Vec<TrackingResult>> {
    deltas
        .iter()
        .map(|&delta| {
            let (drift, m) = sweep_point(cfg, delta)?;
            let outcomes = (0..trials as u64)
                .map(|k| tracking_trial(&drift, m, cfg.horizon, cfg.seed, k))
                .collect::<Result<Vec<_>>>()?;
            aggregate_tracking(&drift, m, cfg.horizon, cfg.seed, &outcomes)
        })
        .collect()
}

/// Least-squares slope of `log gap` against `log delta`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 || points.iter().any(|(x, y)| !(*x > 0.0) || !(*y > 0.0)) {
        return Err(invalid("slope needs at least two positive points"));
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| libm::log(p.0)).collect();
    let ly: Vec<f64> = points.iter().map(|p| libm::log(p.1)).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}
