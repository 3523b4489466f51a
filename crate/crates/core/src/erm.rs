//! Truncated-window ERM, window selection and the tracking simulator.
//!
//! With per-step discrepancy at most `delta`, ERM on the last `m` examples has
//! excess risk on the next distribution bounded by
//! `C sqrt(d/m) + (m+1) delta + 2M sqrt(log(2/conf) / (2m))`. Folding the
//! confidence term into `C' sqrt(d/m)` and minimising over real `m` gives
//! `m* = ((C+C')/2)^(2/3) (d/delta^2)^(1/3)` and the value
//! `3 ((C+C')/2)^(2/3) (d delta)^(1/3) + delta`.
//!
//! The drift term is taken as `(m+1) delta`. Bounding each
//! `disc(D_t, D_{T+1})` by the triangle inequality gives a sum growing with
//! the distance to `T+1`, so the coefficient is a modelling choice kept here
//! for comparability rather than a consequence of the chaining argument.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::linalg::{mean_and_stderr, pairwise_sum};
use crate::loss::Loss;
use crate::lstsq::{constrained_least_squares, LstsqFit};
use crate::rng::{derive_seed, RngState};
use crate::sample::{LabeledExample, Sample};

/// Constants of the windowed learning bound.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WindowConfig {
    pub m: usize,
    /// VC-dimension proxy.
    pub d: f64,
    /// Rademacher constant: `4 R_m(H_L) <= c sqrt(d/m)`.
    pub c: f64,
    pub c_prime: f64,
    /// Per-step discrepancy bound.
    pub drift: f64,
    pub confidence: f64,
    pub loss_bound: f64,
}

impl WindowConfig {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.d, self.c, self.c_prime, self.drift, self.loss_bound]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(invalid("window constants must be finite"));
        }
        if self.m == 0 {
            return Err(invalid("window size must be at least 1"));
        }
        if !(self.d > 0.0) {
            return Err(invalid("d must be positive"));
        }
        if self.c < 0.0 || self.c_prime < 0.0 || self.loss_bound < 0.0 {
            return Err(invalid("constants must be nonnegative"));
        }
        if !(self.drift >= 0.0) {
            return Err(invalid("drift must be nonnegative"));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(invalid("confidence must lie in (0, 1)"));
        }
        Ok(())
    }

    pub fn with_m(self, m: usize) -> Self {
        Self { m, ..self }
    }
}

/// `C' = 2M sqrt(log(2/conf) / (2d))`, which turns the high-probability
/// deviation term into `C' sqrt(d/m)`.
pub fn pac_confidence_constant(loss_bound: f64, confidence: f64, d: f64) -> f64 {
    2.0 * loss_bound * libm::sqrt(libm::log(2.0 / confidence) / (2.0 * d))
}

/// `C' = 2M sqrt(pi/d)`, the in-expectation analogue used for tracking.
pub fn tracking_confidence_constant(loss_bound: f64, d: f64) -> f64 {
    2.0 * loss_bound * libm::sqrt(PI / d)
}

/// ERM with the raw squared loss over the norm ball on the last `m` examples.
pub fn truncated_erm(sample: &Sample, m: usize, norm_bound: f64) -> Result<LstsqFit> {
    if m == 0 || m > sample.len() {
        return Err(invalid(alloc::format!(
            "window {m} outside [1, {}]",
            sample.len()
        )));
    }
    let dim = sample.dim().unwrap_or(0);
    constrained_least_squares(sample.tail(m), dim, norm_bound)
}

/// Real-valued minimiser of `(C+C') sqrt(d/m) + (m+1) drift`.
pub fn optimal_window_real(cfg: &WindowConfig) -> f64 {
    let k = (cfg.c + cfg.c_prime) / 2.0;
    libm::pow(k, 2.0 / 3.0) * libm::cbrt(cfg.d / (cfg.drift * cfg.drift))
}

/// Nearest integer to the real minimiser (ties up), clamped to `[1, T]`.
/// Zero drift returns `T`.
pub fn optimal_window(cfg: &WindowConfig, horizon: usize) -> Result<usize> {
    cfg.validate()?;
    if horizon == 0 {
        return Err(invalid("horizon must be positive"));
    }
    if cfg.drift == 0.0 {
        return Ok(horizon);
    }
    let m = libm::floor(optimal_window_real(cfg) + 0.5);
    if m >= horizon as f64 {
        return Ok(horizon);
    }
    Ok((m as usize).max(1))
}

/// `(C+C') sqrt(d/m) + (m+1) drift` at `cfg.m`.
pub fn window_objective(cfg: &WindowConfig) -> f64 {
    let m = cfg.m as f64;
    (cfg.c + cfg.c_prime) * libm::sqrt(cfg.d / m) + (m + 1.0) * cfg.drift
}

/// `3 ((C+C')/2)^(2/3) (d drift)^(1/3) + drift`, the objective at the real
/// minimiser.
pub fn window_objective_at_optimum(cfg: &WindowConfig) -> f64 {
    let k = (cfg.c + cfg.c_prime) / 2.0;
    3.0 * libm::pow(k, 2.0 / 3.0) * libm::cbrt(cfg.d * cfg.drift) + cfg.drift
}

/// `C sqrt(d/m) + (m+1) drift + 2M sqrt(log(2/conf) / (2m))`.
pub fn pac_bound(cfg: &WindowConfig) -> Result<f64> {
    cfg.validate()?;
    let m = cfg.m as f64;
    Ok(cfg.c * libm::sqrt(cfg.d / m)
        + (m + 1.0) * cfg.drift
        + 2.0 * cfg.loss_bound * libm::sqrt(libm::log(2.0 / cfg.confidence) / (2.0 * m)))
}

/// Circular drift with exactly controlled consecutive discrepancy.
///
/// At step `t` the angle is `a_t = a_0 + t phi` with a random phase `a_0`;
/// instances are `x ~ N(r (cos a_t, sin a_t), I)` and labels
/// `y = (cos a_t, sin a_t) . x + noise`. Consecutive second-moment matrices
/// differ by `r^2 (u u^T - v v^T)` for unit vectors at angle `phi`, whose
/// spectral norm is `r^2 sin phi`, so the discrepancy over the
/// `norm_bound`-ball is `4 norm_bound^2 r^2 sin phi`. `phi` is solved from
/// the requested discrepancy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackingDrift {
    pub discrepancy: f64,
    pub radius: f64,
    pub norm_bound: f64,
    pub label_noise: f64,
    pub loss: Loss,
    /// Fresh draws from `D_{T+1}` used to evaluate the learned hypothesis.
    pub eval_draws: usize,
    /// Draws from `D_{T+1}` used to fit the best-in-class comparator.
    pub oracle_draws: usize,
}

impl Default for TrackingDrift {
    fn default() -> Self {
        Self {
            discrepancy: 0.0,
            radius: 1.0,
            norm_bound: crate::online::DEFAULT_NORM_BOUND,
            label_noise: 0.0,
            loss: Loss::default(),
            eval_draws: 10_000,
            oracle_draws: 10_000,
        }
    }
}

impl TrackingDrift {
    /// Largest discrepancy the schedule can reach: `4 norm_bound^2 r^2`.
    pub fn max_discrepancy(&self) -> f64 {
        4.0 * self.norm_bound * self.norm_bound * self.radius * self.radius
    }

    /// Per-step rotation angle realising the requested discrepancy.
    pub fn step_angle(&self) -> Result<f64> {
        let reach = self.max_discrepancy();
        if !(self.discrepancy >= 0.0) || self.discrepancy > reach {
            return Err(Error::Config(alloc::format!(
                "discrepancy {} unreachable: attainable range is [0, {}] for radius {} and norm bound {}",
                self.discrepancy,
                reach,
                self.radius,
                self.norm_bound
            )));
        }
        if self.discrepancy == 0.0 {
            return Ok(0.0);
        }
        Ok(libm::asin(self.discrepancy / reach))
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(invalid("radius must be positive"));
        }
        if !(self.norm_bound > 0.0) || !self.norm_bound.is_finite() {
            return Err(invalid("norm bound must be positive"));
        }
        if !(self.label_noise >= 0.0) || !self.label_noise.is_finite() {
            return Err(invalid("label noise must be nonnegative"));
        }
        if self.eval_draws == 0 || self.oracle_draws == 0 {
            return Err(invalid("evaluation and oracle sizes must be positive"));
        }
        Ok(())
    }

    fn draw(&self, angle: f64, rng: &mut RngState) -> Result<LabeledExample> {
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        let x0 = self.radius * c + rng.standard_normal();
        let x1 = self.radius * s + rng.standard_normal();
        let mut y = c * x0 + s * x1;
        if self.label_noise > 0.0 {
            y += self.label_noise * rng.standard_normal();
        }
        LabeledExample::new(alloc::vec![x0, x1], y)
    }
}

/// Outcome of one tracking trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackingTrial {
    /// Loss of the windowed fit minus loss of the comparator, both averaged
    /// over the same evaluation draws from `D_{T+1}`.
    pub gap: f64,
    pub ridge_applied: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TrackingResult {
    pub delta: f64,
    pub m: usize,
    pub horizon: usize,
    pub trials: usize,
    pub gap: f64,
    pub stderr: f64,
    pub seed: u64,
    /// Trials in which a singular window system received the ridge jitter.
    pub ridge_trials: usize,
    pub trial_gaps: Vec<f64>,
}

impl TrackingResult {
    pub fn median_gap(&self) -> f64 {
        median(&self.trial_gaps)
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// One trial keyed by `(seed, trial)`. The data do not depend on `m`, so
/// different windows are compared on identical draws. Training, oracle and
/// evaluation draws use separate derived streams.
pub fn tracking_trial(
    drift: &TrackingDrift,
    m: usize,
    horizon: usize,
    seed: u64,
    trial: u64,
) -> Result<TrackingTrial> {
    drift.validate()?;
    if m == 0 || m > horizon {
        return Err(invalid(alloc::format!("window {m} outside [1, {horizon}]")));
    }
    let phi = drift.step_angle()?;
    let key = derive_seed(seed, &[trial]);
    let mut train = RngState::derived(key, &[0]);
    let mut oracle = RngState::derived(key, &[1]);
    let mut eval = RngState::derived(key, &[2]);

    let phase = 2.0 * PI * train.next_f64();
    let angle = |t: usize| phase + t as f64 * phi;
    let examples = (1..=horizon)
        .map(|t| drift.draw(angle(t), &mut train))
        .collect::<Result<Vec<_>>>()?;
    let fit = truncated_erm(&Sample::new(examples)?, m, drift.norm_bound)?;

    let next = angle(horizon + 1);
    let oracle_set = (0..drift.oracle_draws)
        .map(|_| drift.draw(next, &mut oracle))
        .collect::<Result<Vec<_>>>()?;
    let best = constrained_least_squares(&oracle_set, 2, drift.norm_bound)?;

    let mut diffs = Vec::with_capacity(drift.eval_draws);
    for _ in 0..drift.eval_draws {
        let ex = drift.draw(next, &mut eval)?;
        let learned = drift.loss.value(fit.hypothesis.apply(ex.x()), ex.y());
        let reference = drift.loss.value(best.hypothesis.apply(ex.x()), ex.y());
        diffs.push(learned - reference);
    }
    Ok(TrackingTrial {
        gap: pairwise_sum(&diffs) / diffs.len() as f64,
        ridge_applied: fit.ridge_applied || best.ridge_applied,
    })
}

/// Aggregate per-trial outcomes (in trial order) into a result row.
pub fn aggregate_tracking(
    drift: &TrackingDrift,
    m: usize,
    horizon: usize,
    seed: u64,
    outcomes: &[TrackingTrial],
) -> Result<TrackingResult> {
    if outcomes.is_empty() {
        return Err(invalid("at least one trial is required"));
    }
    let trial_gaps: Vec<f64> = outcomes.iter().map(|o| o.gap).collect();
    let (gap, stderr) = mean_and_stderr(&trial_gaps);
    Ok(TrackingResult {
        delta: drift.discrepancy,
        m,
        horizon,
        trials: outcomes.len(),
        gap,
        stderr,
        seed,
        ridge_trials: outcomes.iter().filter(|o| o.ridge_applied).count(),
        trial_gaps,
    })
}

/// Estimate `E[loss of h_T on D_{T+1}] - inf_h L_{D_{T+1}}(h)` for ERM on the
/// last `m` of `horizon` examples, averaged over `trials`.
pub fn tracking_run(
    drift: &TrackingDrift,
    m: usize,
    horizon: usize,
    trials: usize,
    seed: u64,
) -> Result<TrackingResult> {
    let outcomes = (0..trials as u64)
        .map(|k| tracking_trial(drift, m, horizon, seed, k))
        .collect::<Result<Vec<_>>>()?;
    aggregate_tracking(drift, m, horizon, seed, &outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn cfg(c_sum: f64, d: f64, drift: f64) -> WindowConfig {
        WindowConfig {
            m: 1,
            d,
            c: c_sum / 2.0,
            c_prime: c_sum / 2.0,
            drift,
            confidence: 0.1,
            loss_bound: 1.0,
        }
    }

    fn scan_argmin(cfg: &WindowConfig, upper: usize) -> usize {
        (1..=upper)
            .map(|m| (m, window_objective(&cfg.with_m(m))))
            .fold((0, f64::INFINITY), |b, (m, v)| if v < b.1 { (m, v) } else { b })
            .0
    }

    #[test]
    fn window_examples() {
        let a = cfg(2.0, 2.0, 0.1);
        assert_eq!(scan_argmin(&a, 1000), 6);
        assert_eq!(optimal_window(&a, 1000).unwrap(), 6);
        let b = cfg(2.0, 1.0, 1.0);
        assert_eq!(scan_argmin(&b, 1000), 1);
        assert_eq!(optimal_window(&b, 1000).unwrap(), 1);
        assert_eq!(optimal_window(&cfg(2.0, 2.0, 0.0), 77).unwrap(), 77);
        assert_eq!(optimal_window(&cfg(2.0, 2.0, 1e-9), 77).unwrap(), 77);
        assert!(optimal_window(&a, 0).is_err());
    }

    #[test]
    fn pac_bound_example() {
        let c = WindowConfig { m: 6, d: 2.0, c: 1.0, c_prime: 0.0, drift: 0.1, confidence: 0.1, loss_bound: 1.0 };
        let expect = libm::sqrt(2.0 / 6.0) + 0.7 + 2.0 * libm::sqrt(libm::log(20.0) / 12.0);
        assert!((pac_bound(&c).unwrap() - expect).abs() < 1e-12);
        assert!((pac_bound(&c).unwrap() - 2.276638728303408).abs() < 1e-12);
        let big = WindowConfig { m: 100_000_000, drift: 0.0, ..c };
        assert!(pac_bound(&big).unwrap() < 1e-3);
        assert!(pac_bound(&WindowConfig { confidence: 1.0, ..c }).is_err());
    }

    #[test]
    fn folding_confidence_term_matches_pac_bound() {
        let base = WindowConfig { m: 9, d: 3.0, c: 0.7, c_prime: 0.0, drift: 0.02, confidence: 0.05, loss_bound: 2.0 };
        let folded = WindowConfig { c_prime: pac_confidence_constant(2.0, 0.05, 3.0), ..base };
        assert!((pac_bound(&base).unwrap() - window_objective(&folded)).abs() < 1e-12);
    }

    fn ex(x: &[f64], y: f64) -> LabeledExample {
        LabeledExample::new(x.to_vec(), y).unwrap()
    }

    #[test]
    fn window_equal_to_sample_is_full_fit() {
        let data = vec![ex(&[1.0, 0.5], 1.0), ex(&[0.2, 1.0], -0.3), ex(&[1.5, -1.0], 2.0)];
        let s = Sample::new(data.clone()).unwrap();
        let full = constrained_least_squares(&data, 2, 10.0).unwrap();
        assert_eq!(truncated_erm(&s, 3, 10.0).unwrap(), full);
        assert!(truncated_erm(&s, 0, 10.0).is_err());
        assert!(truncated_erm(&s, 4, 10.0).is_err());
    }

    #[test]
    fn two_phase_window_matches_cramer_oracle() {
        let mut rng = RngState::new(5);
        let mut data = Vec::new();
        for t in 0..40 {
            let w = if t < 20 { [1.0, 2.0] } else { [-2.0, 0.5] };
            let x = [rng.standard_normal(), rng.standard_normal()];
            let y = w[0] * x[0] + w[1] * x[1] + 0.1 * rng.standard_normal();
            data.push(ex(&x, y));
        }
        // 2x2 normal equations on the second half, solved by Cramer's rule.
        let (mut a, mut b, mut c, mut p, mut q) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for e in &data[20..] {
            let (x0, x1, y) = (e.x()[0], e.x()[1], e.y());
            a += x0 * x0;
            b += x0 * x1;
            c += x1 * x1;
            p += x0 * y;
            q += x1 * y;
        }
        let det = a * c - b * b;
        let oracle = [(p * c - b * q) / det, (a * q - b * p) / det];
        let fit = truncated_erm(&Sample::new(data).unwrap(), 20, 10.0).unwrap();
        let w = fit.hypothesis.weights();
        assert!((w[0] - oracle[0]).abs() < 1e-8 && (w[1] - oracle[1]).abs() < 1e-8);
    }

    #[test]
    fn realizable_window_recovers_target() {
        let mut rng = RngState::new(9);
        let data: Vec<LabeledExample> = (0..10)
            .map(|_| {
                let x = [rng.standard_normal(), rng.standard_normal()];
                ex(&x, 0.3 * x[0] - 1.2 * x[1])
            })
            .collect();
        let fit = truncated_erm(&Sample::new(data).unwrap(), 2, 10.0).unwrap();
        let w = fit.hypothesis.weights();
        assert!((w[0] - 0.3).abs() < 1e-8 && (w[1] + 1.2).abs() < 1e-8);
    }

    #[test]
    fn window_ignores_discarded_prefix() {
        let tail = [ex(&[1.0, 0.0], 1.0), ex(&[0.0, 1.0], 2.0), ex(&[1.0, 1.0], 2.5)];
        let mut a = vec![ex(&[5.0, 5.0], -9.0)];
        a.extend(tail.iter().cloned());
        let mut b = vec![ex(&[-1.0, 3.0], 7.0), ex(&[2.0, 2.0], 0.0)];
        b.extend(tail.iter().cloned());
        let fa = truncated_erm(&Sample::new(a).unwrap(), 3, 10.0).unwrap();
        let fb = truncated_erm(&Sample::new(b).unwrap(), 3, 10.0).unwrap();
        assert_eq!(fa, fb);
    }

    #[test]
    fn drift_step_realises_spectral_discrepancy() {
        use crate::discrepancy::{analytic_gaussian_moments, spectral_discrepancy};
        let drift = TrackingDrift { discrepancy: 0.3, ..Default::default() };
        let phi = drift.step_angle().unwrap();
        let mean = |a: f64| [drift.radius * libm::cos(a), drift.radius * libm::sin(a)];
        let a = analytic_gaussian_moments(&mean(0.4), 1.0).unwrap();
        let b = analytic_gaussian_moments(&mean(0.4 + phi), 1.0).unwrap();
        let d = spectral_discrepancy(&a, &b, drift.norm_bound).unwrap();
        assert!((d - 0.3).abs() < 1e-9);
        let far = TrackingDrift { discrepancy: 401.0, ..Default::default() };
        assert!(matches!(far.step_angle(), Err(Error::Config(_))));
    }

    #[test]
    fn no_drift_gap_is_small() {
        let drift = TrackingDrift { label_noise: 1.0, ..Default::default() };
        let r = tracking_run(&drift, 500, 500, 50, 11).unwrap();
        assert!(r.stderr >= 0.0);
        assert!(r.gap <= 0.05, "gap {} stderr {}", r.gap, r.stderr);
    }

    #[test]
    fn optimal_window_beats_single_example() {
        let drift = TrackingDrift { discrepancy: 0.1, ..Default::default() };
        let w = WindowConfig { m: 1, d: 2.0, c: 1.0, c_prime: 1.0, drift: 0.1, confidence: 0.1, loss_bound: 100.0 };
        let m = optimal_window(&w, 200).unwrap();
        let best = tracking_run(&drift, m, 200, 50, 3).unwrap();
        let one = tracking_run(&drift, 1, 200, 50, 3).unwrap();
        assert!(best.median_gap() <= one.median_gap());
    }

    #[test]
    fn tracking_is_deterministic() {
        let drift = TrackingDrift { discrepancy: 0.05, eval_draws: 500, oracle_draws: 500, ..Default::default() };
        let a = tracking_run(&drift, 5, 50, 1, 99).unwrap();
        let b = tracking_run(&drift, 5, 50, 1, 99).unwrap();
        assert_eq!(a.gap.to_bits(), b.gap.to_bits());
        assert_eq!(a.stderr, 0.0);
        assert!(tracking_run(&drift, 51, 50, 1, 99).is_err());
        assert!(tracking_run(&drift, 5, 50, 0, 99).is_err());
    }

    proptest! {
        #[test]
        fn window_within_one_of_scan(
            c_sum in 0.1f64..10.0,
            d in 0.5f64..10.0,
            drift in 0.001f64..1.0,
        ) {
            let w = cfg(c_sum, d, drift);
            let horizon = 5000;
            let got = optimal_window(&w, horizon).unwrap();
            let exact = scan_argmin(&w, horizon);
            prop_assert!((got as i64 - exact as i64).abs() <= 1);
        }

        #[test]
        fn bound_at_window_is_near_minimal(
            c in 0.1f64..5.0,
            d in 0.5f64..5.0,
            drift in 0.001f64..0.5,
            loss_bound in 0.1f64..3.0,
        ) {
            let base = WindowConfig { m: 1, d, c, c_prime: 0.0, drift, confidence: 0.1, loss_bound };
            let folded = WindowConfig { c_prime: pac_confidence_constant(loss_bound, 0.1, d), ..base };
            let horizon = 2000;
            let m = optimal_window(&folded, horizon).unwrap();
            let at = pac_bound(&base.with_m(m)).unwrap();
            let slack = (pac_bound(&base.with_m((m + 1).min(horizon))).unwrap() - at).abs()
                .max((pac_bound(&base.with_m(m.saturating_sub(1).max(1))).unwrap() - at).abs());
            for other in 1..=horizon {
                prop_assert!(at <= pac_bound(&base.with_m(other)).unwrap() + slack + 1e-12);
            }
        }

        #[test]
        fn objective_at_real_optimum_has_cubic_root_shape(
            c_sum in 0.1f64..10.0,
            d in 0.5f64..10.0,
            drift in 1e-4f64..0.5,
        ) {
            let w = cfg(c_sum, d, drift);
            let m_real = optimal_window_real(&w);
            let at_real = (c_sum) * libm::sqrt(d / m_real) + (m_real + 1.0) * drift;
            prop_assert!((at_real - window_objective_at_optimum(&w)).abs() <= 1e-9 * at_real.max(1.0));
            if m_real >= 1.0 {
                let m = optimal_window(&w, usize::MAX).unwrap();
                let at_int = window_objective(&w.with_m(m));
                // convexity: rounding by at most 1/2 costs at most the worse half step
                let f = |x: f64| c_sum * libm::sqrt(d / x) + (x + 1.0) * drift;
                let half = f(m_real - 0.5).max(f(m_real + 0.5));
                prop_assert!(at_int >= at_real - 1e-9);
                prop_assert!(at_int <= half + 1e-9);
            }
        }

        #[test]
        fn pac_bound_increases_with_drift(m in 1usize..500, a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let base = WindowConfig { m, d: 2.0, c: 1.0, c_prime: 0.0, drift: a.min(b), confidence: 0.1, loss_bound: 1.0 };
            let hi = WindowConfig { drift: a.max(b), ..base };
            prop_assert!(pac_bound(&base).unwrap() <= pac_bound(&hi).unwrap());
        }
    }
}
