//! Widrow-Hoff (LMS) base learner, its hypothesis trace, and regret against
//! the best fixed hypothesis in the norm ball.
//!
//! Experiments elsewhere sometimes describe the base learner as a perceptron;
//! this crate uses Widrow-Hoff throughout since the task is regression.

use alloc::vec::Vec;

use crate::error::{check_dim, invalid, Error, Result};
use crate::hypothesis::LinearHypothesis;
use crate::linalg::project_ball;
use crate::loss::Loss;
use crate::lstsq::constrained_least_squares;
use crate::sample::{LabeledExample, Sample};

pub const DEFAULT_ETA0: f64 = 0.1;
pub const DEFAULT_NORM_BOUND: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSchedule {
    Constant(f64),
    /// `eta0 / sqrt(t)` at the `t`-th update (1-based).
    InverseSqrt(f64),
}

impl StepSchedule {
    /// Step size for the `t`-th update, `t >= 1`.
    pub fn eta(&self, t: u64) -> f64 {
        match *self {
            StepSchedule::Constant(eta) => eta,
            StepSchedule::InverseSqrt(eta0) => eta0 / libm::sqrt(t as f64),
        }
    }

    fn validate(&self) -> Result<()> {
        let eta = match *self {
            StepSchedule::Constant(e) | StepSchedule::InverseSqrt(e) => e,
        };
        if eta > 0.0 && eta.is_finite() {
            Ok(())
        } else {
            Err(invalid("step size must be finite and positive"))
        }
    }
}

impl Default for StepSchedule {
    fn default() -> Self {
        StepSchedule::InverseSqrt(DEFAULT_ETA0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnlineConfig {
    pub schedule: StepSchedule,
    pub norm_bound: f64,
    pub loss: Loss,
}

impl Default for OnlineConfig {
    fn default() -> Self {
        Self {
            schedule: StepSchedule::default(),
            norm_bound: DEFAULT_NORM_BOUND,
            loss: Loss::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearnerState {
    hypothesis: LinearHypothesis,
    schedule: StepSchedule,
    /// Number of updates performed.
    t: u64,
}

impl LearnerState {
    pub fn new(hypothesis: LinearHypothesis, schedule: StepSchedule) -> Result<Self> {
        schedule.validate()?;
        Ok(Self { hypothesis, schedule, t: 0 })
    }

    pub fn hypothesis(&self) -> &LinearHypothesis {
        &self.hypothesis
    }

    pub fn steps(&self) -> u64 {
        self.t
    }

    /// One LMS update `w <- P(w + eta_t (y - w.x) x)` where `P` projects onto
    /// the norm ball.
    pub fn step(&self, example: &LabeledExample) -> Result<Self> {
        check_dim(self.hypothesis.dim(), example.dim())?;
        let t = self.t + 1;
        let eta = self.schedule.eta(t);
        let residual = example.y() - self.hypothesis.apply(example.x());
        let mut w: Vec<f64> = self
            .hypothesis
            .weights()
            .iter()
            .zip(example.x())
            .map(|(w, x)| w + eta * residual * x)
            .collect();
        if w.iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericOverflow(alloc::format!(
                "non-finite Widrow-Hoff update at step {t}; lower the step size"
            )));
        }
        let bound = self.hypothesis.norm_bound();
        project_ball(&mut w, bound);
        Ok(Self {
            hypothesis: LinearHypothesis::new(w, bound)?,
            schedule: self.schedule,
            t,
        })
    }
}

pub fn widrow_hoff_step(state: &LearnerState, example: &LabeledExample) -> Result<LearnerState> {
    state.step(example)
}

/// Hypotheses `h_1..h_T` (each fixed before its example is seen) and the
/// losses `L(h_t(x_t), y_t)` they incurred.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    hypotheses: Vec<LinearHypothesis>,
    losses: Vec<f64>,
}

impl Trace {
    pub fn new(hypotheses: Vec<LinearHypothesis>, losses: Vec<f64>) -> Result<Self> {
        if hypotheses.len() != losses.len() {
            return Err(invalid("trace hypotheses and losses differ in length"));
        }
        Ok(Self { hypotheses, losses })
    }

    pub fn hypotheses(&self) -> &[LinearHypothesis] {
        &self.hypotheses
    }

    pub fn losses(&self) -> &[f64] {
        &self.losses
    }

    pub fn len(&self) -> usize {
        self.losses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.losses.is_empty()
    }
}

/// Run Widrow-Hoff from the zero hypothesis over the whole sample.
pub fn run_online(sample: &Sample, config: &OnlineConfig) -> Result<Trace> {
    let Some(dim) = sample.dim() else {
        return Ok(Trace::default());
    };
    let mut state = LearnerState::new(LinearHypothesis::zero(dim, config.norm_bound)?, config.schedule)?;
    let mut hypotheses = Vec::with_capacity(sample.len());
    let mut losses = Vec::with_capacity(sample.len());
    for ex in sample.examples() {
        losses.push(config.loss.value(state.hypothesis.apply(ex.x()), ex.y()));
        hypotheses.push(state.hypothesis.clone());
        state = state.step(ex)?;
    }
    Ok(Trace { hypotheses, losses })
}

/// Best fixed hypothesis in the ball for the raw squared loss, and its
/// cumulative loss under `loss`.
pub fn comparator(sample: &Sample, norm_bound: f64, loss: &Loss) -> Result<(LinearHypothesis, f64)> {
    let Some(dim) = sample.dim() else {
        return Ok((LinearHypothesis::zero(0, norm_bound)?, 0.0));
    };
    let fit = constrained_least_squares(sample.examples(), dim, norm_bound)?;
    let total = sample
        .examples()
        .iter()
        .map(|ex| loss.value(fit.hypothesis.apply(ex.x()), ex.y()))
        .sum();
    Ok((fit.hypothesis, total))
}

/// `R_T = sum_t L(h_t(x_t), y_t) - min_{||w|| <= norm_bound} sum_t L(w.x_t, y_t)`.
pub fn regret(trace: &Trace, sample: &Sample, config: &OnlineConfig) -> Result<f64> {
    if trace.len() != sample.len() {
        return Err(invalid("trace and sample lengths differ"));
    }
    let learner: f64 = trace.losses.iter().sum();
    let (_, best) = comparator(sample, config.norm_bound, &config.loss)?;
    Ok(learner - best)
}
