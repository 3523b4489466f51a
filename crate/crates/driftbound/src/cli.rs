//! Command-line interface.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use driftbound_core::discrepancy::{
    empirical_moments, l1_distance, rectangle_example, spectral_discrepancy, threshold_discrepancy,
};
use driftbound_core::erm::{TrackingDrift, WindowConfig};
use driftbound_core::harness::{generate_drift, DriftConfig, ExperimentConfig, SweepConfig};
use driftbound_core::loss::DEFAULT_LOSS_CLIP;
use driftbound_core::online::{OnlineConfig, StepSchedule, DEFAULT_ETA0, DEFAULT_NORM_BOUND};
use driftbound_core::weights::{solve_weights, QpInstance};
use driftbound_core::{Loss, RngState};

use crate::config::KeyValueFile;
use crate::{io, runner};

const DEFAULT_TRIALS: usize = 50;
const DEFAULT_HORIZONS: [usize; 4] = [100, 200, 400, 800];
const DEFAULT_DELTAS: [f64; 4] = [0.01, 0.03, 0.1, 0.3];
const DEFAULT_HORIZON: usize = 200;
const DEFAULT_CONFIDENCE: f64 = 0.1;
const DEFAULT_RESOLUTION: usize = 400;

#[derive(Debug, Parser)]
#[command(name = "driftbound", version, about = "Learning under drifting distributions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Flat `key = value` file; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Regulariser of the weight QP (default `M / sqrt(T)`).
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Radius of the linear hypothesis ball.
    #[arg(long, global = true)]
    pub norm_bound: Option<f64>,
    /// Ceiling `M` of the squared loss.
    #[arg(long, global = true)]
    pub loss_clip: Option<f64>,
    /// Initial Widrow-Hoff step size (decays as `eta0 / sqrt(t)`).
    #[arg(long, global = true)]
    pub eta0: Option<f64>,
    /// Output file (standard output when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct DriftArgs {
    /// Half-width of the uniform mean step.
    #[arg(long)]
    pub mean_step: Option<f64>,
    /// Half-width of the rotation angle, in radians.
    #[arg(long)]
    pub rotation: Option<f64>,
    /// Standard deviation of the instance coordinates.
    #[arg(long)]
    pub noise: Option<f64>,
    /// Standard deviation of additive label noise.
    #[arg(long)]
    pub label_noise: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a drifting sample and its test set as CSV.
    Simulate {
        #[arg(long)]
        horizon: Option<usize>,
        #[command(flatten)]
        drift: DriftArgs,
    },
    /// Discrepancy between two grids, moment matrices or point sets.
    Discrepancy(DiscrepancyArgs),
    /// Solve the weight QP for given costs; prints JSON.
    Weights {
        /// Comma-separated costs.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        costs: Option<Vec<f64>>,
        /// CSV with a single `cost` column.
        #[arg(long, conflicts_with = "costs")]
        costs_file: Option<PathBuf>,
    },
    /// Compare weighted, regular and fixed averaging over several horizons.
    Experiment {
        /// Comma-separated sample sizes.
        #[arg(long, value_delimiter = ',')]
        horizons: Option<Vec<usize>>,
        #[command(flatten)]
        drift: DriftArgs,
    },
    /// Tracking gap of windowed ERM at the optimal window, per discrepancy.
    Track(TrackArgs),
    /// Bound terms for the weighted hypothesis; prints JSON.
    Bounds {
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        confidence: Option<f64>,
        #[command(flatten)]
        drift: DriftArgs,
    },
}

#[derive(Debug, Args)]
pub struct DiscrepancyArgs {
    #[arg(long, requires = "grid_q")]
    pub grid_p: Option<PathBuf>,
    #[arg(long, requires = "grid_p")]
    pub grid_q: Option<PathBuf>,
    #[arg(long, requires = "moments_b")]
    pub moments_a: Option<PathBuf>,
    #[arg(long, requires = "moments_a")]
    pub moments_b: Option<PathBuf>,
    #[arg(long, requires = "points_b")]
    pub points_a: Option<PathBuf>,
    #[arg(long, requires = "points_a")]
    pub points_b: Option<PathBuf>,
    /// Height `R > 1` of the overlapping-rectangles example.
    #[arg(long)]
    pub rectangle: Option<f64>,
    /// Cells per axis for the rectangle example.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Write the rectangle example's first measure as a grid CSV.
    #[arg(long, requires = "rectangle")]
    pub save_p: Option<PathBuf>,
    /// Write the rectangle example's second measure as a grid CSV.
    #[arg(long, requires = "rectangle")]
    pub save_q: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrackArgs {
    /// Comma-separated per-step discrepancies.
    #[arg(long, value_delimiter = ',')]
    pub deltas: Option<Vec<f64>>,
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Distance of the instance mean from the origin.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub label_noise: Option<f64>,
    /// Rademacher constant of the window formula.
    #[arg(long)]
    pub c: Option<f64>,
    /// Confidence constant of the window formula.
    #[arg(long)]
    pub c_prime: Option<f64>,
    /// Capacity `d` of the window formula.
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub eval_draws: Option<usize>,
    #[arg(long)]
    pub oracle_draws: Option<usize>,
}

/// Parse `args` (including the program name) and run; results not sent to
/// `--out` go to `stdout`.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    execute(Cli::try_parse_from(args)?, stdout)
}

struct Ctx<'a> {
    g: &'a GlobalArgs,
    file: KeyValueFile,
}

impl Ctx<'_> {
    fn seed(&self) -> Result<u64> {
        Ok(self.file.pick(self.g.seed, "seed")?.unwrap_or(0))
    }

    fn trials(&self, default: usize) -> Result<usize> {
        let t = self.file.pick(self.g.trials, "trials")?.unwrap_or(default);
        anyhow::ensure!(t >= 1, "trials must be at least 1");
        Ok(t)
    }

    fn norm_bound(&self) -> Result<f64> {
        Ok(self.file.pick(self.g.norm_bound, "norm_bound")?.unwrap_or(DEFAULT_NORM_BOUND))
    }

    fn loss(&self) -> Result<Loss> {
        Ok(Loss::squared(self.file.pick(self.g.loss_clip, "loss_clip")?.unwrap_or(DEFAULT_LOSS_CLIP))?)
    }

    fn lambda(&self) -> Result<Option<f64>> {
        self.file.pick(self.g.lambda, "lambda")
    }

    fn out(&self) -> Result<Option<PathBuf>> {
        self.file.pick(self.g.out.clone(), "out")
    }

    fn online(&self) -> Result<OnlineConfig> {
        let eta0 = self.file.pick(self.g.eta0, "eta0")?.unwrap_or(DEFAULT_ETA0);
        Ok(OnlineConfig {
            schedule: StepSchedule::InverseSqrt(eta0),
            norm_bound: self.norm_bound()?,
            loss: self.loss()?,
        })
    }

    fn drift(&self, a: &DriftArgs) -> Result<DriftConfig> {
        let d = DriftConfig::default();
        Ok(DriftConfig {
            mean_step: self.file.pick(a.mean_step, "mean_step")?.unwrap_or(d.mean_step),
            rotation: self.file.pick(a.rotation, "rotation")?.unwrap_or(d.rotation),
            noise: self.file.pick(a.noise, "noise")?.unwrap_or(d.noise),
            label_noise: self.file.pick(a.label_noise, "label_noise")?.unwrap_or(d.label_noise),
            ..d
        })
    }

    fn experiment(&self, a: &DriftArgs) -> Result<ExperimentConfig> {
        Ok(ExperimentConfig { drift: self.drift(a)?, online: self.online()?, lambda: self.lambda()? })
    }

    fn horizon(&self, flag: Option<usize>) -> Result<usize> {
        Ok(self.file.pick(flag, "horizon")?.unwrap_or(DEFAULT_HORIZON))
    }
}

fn emit(out: Option<PathBuf>, stdout: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => {
            body(stdout)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).with_context(|| format!("opening {}", path.display()))
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    let file = match &cli.global.config {
        Some(p) => KeyValueFile::load(p)?,
        None => KeyValueFile::default(),
    };
    let ctx = Ctx { g: &cli.global, file };
    match &cli.command {
        Command::Simulate { horizon, drift } => simulate(&ctx, *horizon, drift, stdout),
        Command::Discrepancy(a) => discrepancy(&ctx, a, stdout),
        Command::Weights { costs, costs_file } => weights(&ctx, costs.clone(), costs_file.as_deref(), stdout),
        Command::Experiment { horizons, drift } => experiment(&ctx, horizons.clone(), drift, stdout),
        Command::Track(a) => track(&ctx, a, stdout),
        Command::Bounds { horizon, confidence, drift } => bounds(&ctx, *horizon, *confidence, drift, stdout),
    }
}

fn simulate(ctx: &Ctx, horizon: Option<usize>, a: &DriftArgs, stdout: &mut dyn Write) -> Result<()> {
    let seed = ctx.seed()?;
    let cfg = DriftConfig { horizon: ctx.horizon(horizon)?, seed, ..ctx.drift(a)? };
    let data = generate_drift(&cfg, ctx.norm_bound()?, ctx.loss()?.bound(), &mut RngState::new(seed))?;
    emit(ctx.out()?, stdout, |w| io::write_drift_data(w, &data))
}

fn discrepancy(ctx: &Ctx, a: &DiscrepancyArgs, stdout: &mut dyn Write) -> Result<()> {
    let inputs = [a.grid_p.is_some(), a.moments_a.is_some(), a.points_a.is_some(), a.rectangle.is_some()];
    if inputs.iter().filter(|&&b| b).count() != 1 {
        bail!("give exactly one of --grid-p/--grid-q, --moments-a/--moments-b, --points-a/--points-b or --rectangle");
    }
    let norm_bound = ctx.norm_bound()?;
    let value = if let (Some(p), Some(q)) = (&a.grid_p, &a.grid_q) {
        let p = io::read_grid(open(p)?)?;
        let q = io::read_grid(open(q)?)?;
        json!({
            "kind": "grid",
            "threshold_discrepancy": threshold_discrepancy(&p, &q)?,
            "l1_distance": l1_distance(&p, &q)?,
        })
    } else if let Some(r) = a.rectangle {
        let resolution = ctx.file.pick(a.resolution, "resolution")?.unwrap_or(DEFAULT_RESOLUTION);
        let ex = rectangle_example(r, resolution)?;
        if let Some(path) = &a.save_p {
            io::write_grid(BufWriter::new(File::create(path)?), &ex.p)?;
        }
        if let Some(path) = &a.save_q {
            io::write_grid(BufWriter::new(File::create(path)?), &ex.q)?;
        }
        json!({
            "kind": "rectangle",
            "r": r,
            "resolution": resolution,
            "threshold_discrepancy": threshold_discrepancy(&ex.p, &ex.q)?,
            "l1_distance": l1_distance(&ex.p, &ex.q)?,
            "analytic_l1_distance": ex.analytic_l1,
        })
    } else {
        let (ma, mb) = match (&a.moments_a, &a.moments_b, &a.points_a, &a.points_b) {
            (Some(x), Some(y), _, _) => (io::read_moments(open(x)?)?, io::read_moments(open(y)?)?),
            (_, _, Some(x), Some(y)) => (
                empirical_moments(&io::read_points(open(x)?)?)?,
                empirical_moments(&io::read_points(open(y)?)?)?,
            ),
            _ => unreachable!("input presence checked above"),
        };
        json!({
            "kind": "spectral",
            "norm_bound": norm_bound,
            "discrepancy": spectral_discrepancy(&ma, &mb, norm_bound)?,
        })
    };
    emit(ctx.out()?, stdout, |w| io::write_json(w, &value))
}

fn weights(ctx: &Ctx, costs: Option<Vec<f64>>, costs_file: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let costs = match (costs, costs_file) {
        (Some(c), _) => c,
        (None, Some(p)) => io::read_costs(open(p)?)?,
        (None, None) => bail!("give --costs or --costs-file"),
    };
    let lambda = ctx.lambda()?.context("--lambda is required for weights")?;
    let qp = QpInstance::new(costs, lambda)?;
    let w = solve_weights(&qp)?;
    let value = json!({
        "lambda": lambda,
        "weights": w.as_slice(),
        "objective": qp.objective(w.as_slice()),
        "kkt_residual": qp.kkt_residual(&w),
    });
    emit(ctx.out()?, stdout, |out| io::write_json(out, &value))
}

fn experiment(ctx: &Ctx, horizons: Option<Vec<usize>>, a: &DriftArgs, stdout: &mut dyn Write) -> Result<()> {
    let horizons = ctx.file.pick_list(horizons, "horizons")?.unwrap_or_else(|| DEFAULT_HORIZONS.to_vec());
    let rows = runner::run_experiment(&ctx.experiment(a)?, &horizons, ctx.trials(DEFAULT_TRIALS)?, ctx.seed()?)?;
    emit(ctx.out()?, stdout, |w| io::write_experiment_rows(w, &rows))
}

fn track(ctx: &Ctx, a: &TrackArgs, stdout: &mut dyn Write) -> Result<()> {
    let f = &ctx.file;
    let deltas = f.pick_list(a.deltas.clone(), "deltas")?.unwrap_or_else(|| DEFAULT_DELTAS.to_vec());
    let base = SweepConfig::default();
    let loss = ctx.loss()?;
    let drift = TrackingDrift {
        radius: f.pick(a.radius, "radius")?.unwrap_or(base.drift.radius),
        norm_bound: ctx.norm_bound()?,
        label_noise: f.pick(a.label_noise, "label_noise")?.unwrap_or(base.drift.label_noise),
        loss,
        eval_draws: f.pick(a.eval_draws, "eval_draws")?.unwrap_or(base.drift.eval_draws),
        oracle_draws: f.pick(a.oracle_draws, "oracle_draws")?.unwrap_or(base.drift.oracle_draws),
        ..base.drift
    };
    let window = WindowConfig {
        c: f.pick(a.c, "c")?.unwrap_or(base.window.c),
        c_prime: f.pick(a.c_prime, "c_prime")?.unwrap_or(base.window.c_prime),
        d: f.pick(a.d, "d")?.unwrap_or(base.window.d),
        loss_bound: loss.bound(),
        ..base.window
    };
    let cfg = SweepConfig { drift, window, horizon: ctx.horizon(a.horizon)?, seed: ctx.seed()? };
    let rows = runner::tracking_sweep(&cfg, &deltas, ctx.trials(DEFAULT_TRIALS)?)?;
    for r in rows.iter().filter(|r| r.ridge_trials > 0) {
        eprintln!("delta {}: ridge jitter applied in {} of {} trials", r.delta, r.ridge_trials, r.trials);
    }
    emit(ctx.out()?, stdout, |w| io::write_tracking_rows(w, &rows))
}

fn bounds(
    ctx: &Ctx,
    horizon: Option<usize>,
    confidence: Option<f64>,
    a: &DriftArgs,
    stdout: &mut dyn Write,
) -> Result<()> {
    let horizon = ctx.horizon(horizon)?;
    let confidence = ctx.file.pick(confidence, "confidence")?.unwrap_or(DEFAULT_CONFIDENCE);
    let trials = ctx.trials(1)?;
    let checks = runner::bound_checks(&ctx.experiment(a)?, horizon, trials, ctx.seed()?, confidence)?;
    let violations = checks.iter().filter(|c| !c.covered).count();
    let value = json!({
        "horizon": horizon,
        "confidence": confidence,
        "trials": trials,
        "violations": violations,
        "violation_rate": violations as f64 / trials as f64,
        "checks": checks,
    });
    emit(ctx.out()?, stdout, |w| io::write_json(w, &value))
}
