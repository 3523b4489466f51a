//! Parallel versions of the experiment loops.
//!
//! Every trial is a pure function of its key, so trials run on the rayon pool
//! in any order and are collected back in key order before aggregation. The
//! output is identical to the sequential loops in `driftbound_core::harness`
//! for any thread count.

use anyhow::Result;
use rayon::prelude::*;

use driftbound_core::erm::{aggregate_tracking, tracking_trial, TrackingResult};
use driftbound_core::harness::{
    aggregate_experiment, bound_trial, experiment_trial, sweep_point, trial_seed, BoundCheck, DriftConfig,
    ExperimentConfig, ExperimentRow, SweepConfig,
};

/// Rows sorted by `(T, algorithm name)`.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    horizons: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<ExperimentRow>> {
    anyhow::ensure!(!horizons.is_empty(), "at least one horizon is required");
    let mut sorted = horizons.to_vec();
    sorted.sort_unstable();
    let jobs: Vec<(usize, usize)> = sorted.iter().flat_map(|&t| (0..trials).map(move |k| (t, k))).collect();
    let scores = jobs
        .par_iter()
        .map(|&(t, k)| experiment_trial(cfg, t, k, seed))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(3 * sorted.len());
    for (i, &t) in sorted.iter().enumerate() {
        rows.extend(aggregate_experiment(t, seed, &scores[i * trials..(i + 1) * trials])?);
    }
    Ok(rows)
}

/// One row per discrepancy, in the given order.
pub fn tracking_sweep(cfg: &SweepConfig, deltas: &[f64], trials: usize) -> Result<Vec<TrackingResult>> {
    let points = deltas.iter().map(|&d| sweep_point(cfg, d)).collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<(usize, u64)> = (0..points.len()).flat_map(|i| (0..trials as u64).map(move |k| (i, k))).collect();
    let outcomes = jobs
        .par_iter()
        .map(|&(i, k)| {
            let (drift, m) = &points[i];
            tracking_trial(drift, *m, cfg.horizon, cfg.seed, k)
        })
        .collect::<Result<Vec<_>, _>>()?;
    points
        .iter()
        .enumerate()
        .map(|(i, (drift, m))| {
            Ok(aggregate_tracking(drift, *m, cfg.horizon, cfg.seed, &outcomes[i * trials..(i + 1) * trials])?)
        })
        .collect()
}

/// Bound checks for `trials` trials at one horizon, seeded like
/// [`run_experiment`].
pub fn bound_checks(
    cfg: &ExperimentConfig,
    horizon: usize,
    trials: usize,
    seed: u64,
    confidence: f64,
) -> Result<Vec<BoundCheck>> {
    Ok((0..trials)
        .into_par_iter()
        .map(|k| {
            let drift = DriftConfig { horizon, seed: trial_seed(seed, horizon, k), ..cfg.drift };
            bound_trial(&ExperimentConfig { drift, ..*cfg }, confidence)
        })
        .collect::<Result<Vec<_>, _>>()?)
}
