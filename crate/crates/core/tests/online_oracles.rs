use driftbound_core::online::{comparator, regret, run_online, OnlineConfig, StepSchedule};
use driftbound_core::{predict, LabeledExample, LinearHypothesis, Loss, RngState, Sample};
use proptest::prelude::*;

fn gaussian_sample(seed: u64, n: usize, w: [f64; 2], noise: f64) -> Sample {
    let mut rng = RngState::new(seed);
    (0..n)
        .map(|_| {
            let x = [rng.standard_normal(), rng.standard_normal()];
            let y = w[0] * x[0] + w[1] * x[1] + noise * rng.standard_normal();
            LabeledExample::new(x.to_vec(), y).unwrap()
        })
        .collect::<driftbound_core::Result<Sample>>()
        .unwrap()
}

/// Scalar re-implementation of projected LMS in two dimensions.
fn hand_losses(sample: &Sample, eta: impl Fn(usize) -> f64, radius: f64, clip: f64) -> Vec<f64> {
    let (mut w0, mut w1) = (0.0f64, 0.0f64);
    let mut out = Vec::new();
    for (i, e) in sample.examples().iter().enumerate() {
        let (x0, x1, y) = (e.x()[0], e.x()[1], e.y());
        let r = y - (w0 * x0 + w1 * x1);
        out.push((r * r).min(clip));
        w0 += eta(i + 1) * r * x0;
        w1 += eta(i + 1) * r * x1;
        let n = (w0 * w0 + w1 * w1).sqrt();
        if n > radius {
            w0 *= radius / n;
            w1 *= radius / n;
        }
    }
    out
}

#[test]
fn ten_step_trace_matches_hand_simulation() {
    let s = gaussian_sample(77, 10, [2.0, -1.0], 0.3);
    let cfg = OnlineConfig::default();
    let trace = run_online(&s, &cfg).unwrap();
    let expect = hand_losses(&s, |t| 0.1 / (t as f64).sqrt(), 10.0, 100.0);
    for (a, b) in trace.losses().iter().zip(&expect) {
        assert!((a - b).abs() <= 1e-12 * b.max(1.0), "{a} vs {b}");
    }

    // Large constant steps and a small ball exercise the projection.
    let cfg = OnlineConfig {
        schedule: StepSchedule::Constant(0.5),
        norm_bound: 0.3,
        loss: Loss::squared(4.0).unwrap(),
    };
    let trace = run_online(&s, &cfg).unwrap();
    let expect = hand_losses(&s, |_| 0.5, 0.3, 4.0);
    for (a, b) in trace.losses().iter().zip(&expect) {
        assert!((a - b).abs() <= 1e-12 * b.max(1.0), "{a} vs {b}");
    }
}

/// Minimum of the raw squared loss over a grid on the disc of radius `r`,
/// refined twice around the incumbent.
fn grid_minimum(sample: &Sample, r: f64) -> f64 {
    let (mut a, mut b, mut c, mut p, mut q, mut yy) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for e in sample.examples() {
        let (x0, x1, y) = (e.x()[0], e.x()[1], e.y());
        a += x0 * x0;
        b += x0 * x1;
        c += x1 * x1;
        p += x0 * y;
        q += x1 * y;
        yy += y * y;
    }
    let f = |w0: f64, w1: f64| a * w0 * w0 + 2.0 * b * w0 * w1 + c * w1 * w1 - 2.0 * (p * w0 + q * w1) + yy;
    let (mut best, mut centre, mut half, mut step) = (f64::INFINITY, (0.0, 0.0), r, r / 200.0);
    for _ in 0..3 {
        let n = (2.0 * half / step).round() as i64;
        let origin = centre;
        for i in 0..=n {
            for j in 0..=n {
                let w0 = origin.0 - half + i as f64 * step;
                let w1 = origin.1 - half + j as f64 * step;
                if w0 * w0 + w1 * w1 > r * r {
                    continue;
                }
                let v = f(w0, w1);
                if v < best {
                    best = v;
                    centre = (w0, w1);
                }
            }
        }
        half = 2.0 * step;
        step /= 100.0;
    }
    best
}

#[test]
fn regret_matches_grid_comparator() {
    for (radius, seed) in [(10.0, 1u64), (0.5, 2)] {
        let s = gaussian_sample(seed, 200, [0.7, -0.4], 0.5);
        let cfg = OnlineConfig { norm_bound: radius, ..Default::default() };
        let trace = run_online(&s, &cfg).unwrap();
        let learner: f64 = trace.losses().iter().sum();
        let (_, best) = comparator(&s, radius, &cfg.loss).unwrap();
        assert!(s.examples().iter().all(|e| e.y().abs() < 5.0));
        let oracle = grid_minimum(&s, radius);
        assert!((best - oracle).abs() <= 1e-3, "radius {radius}: {best} vs {oracle}");
        let r = regret(&trace, &s, &cfg).unwrap();
        assert!((r - (learner - oracle)).abs() <= 1e-3);
    }
}

#[test]
fn average_regret_shrinks_with_horizon() {
    let median = |mut v: Vec<f64>| {
        v.sort_by(f64::total_cmp);
        0.5 * (v[9] + v[10])
    };
    let per_step = |n: usize| {
        median(
            (0..20u64)
                .map(|seed| {
                    let mut rng = RngState::derived(seed, &[n as u64]);
                    let s: Sample = (0..n)
                        .map(|_| {
                            let x = [rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)];
                            let y = 0.8 * x[0] - 0.5 * x[1] + rng.uniform(-0.2, 0.2);
                            LabeledExample::new(x.to_vec(), y).unwrap()
                        })
                        .collect::<driftbound_core::Result<Sample>>()
                        .unwrap();
                    let cfg = OnlineConfig::default();
                    regret(&run_online(&s, &cfg).unwrap(), &s, &cfg).unwrap() / n as f64
                })
                .collect(),
        )
    };
    let r: Vec<f64> = [100, 400, 1600].iter().map(|&n| per_step(n)).collect();
    assert!(r[0] > r[1] && r[1] > r[2], "{r:?}");
}

proptest! {
    #[test]
    fn trace_stays_in_ball_with_bounded_losses(
        seed in any::<u64>(),
        radius in 0.1f64..5.0,
        eta in 0.01f64..1.0,
        clip in 0.5f64..50.0,
    ) {
        let s = gaussian_sample(seed, 60, [3.0, -2.0], 1.0);
        let cfg = OnlineConfig { schedule: StepSchedule::Constant(eta), norm_bound: radius, loss: Loss::squared(clip).unwrap() };
        let trace = run_online(&s, &cfg).unwrap();
        prop_assert_eq!(trace.len(), 60);
        for h in trace.hypotheses() {
            prop_assert!(h.norm() <= radius * (1.0 + 1e-12));
        }
        for l in trace.losses() {
            prop_assert!((0.0..=clip).contains(l));
        }
    }

    #[test]
    fn comparator_beats_random_ball_points(seed in any::<u64>(), radius in 0.1f64..3.0) {
        let s = gaussian_sample(seed, 40, [1.5, 2.5], 0.7);
        let loss = Loss::squared(1e6).unwrap();
        let (_, best) = comparator(&s, radius, &loss).unwrap();
        let mut rng = RngState::derived(seed, &[1]);
        for _ in 0..200 {
            let w = [rng.uniform(-radius, radius), rng.uniform(-radius, radius)];
            if w[0].hypot(w[1]) > radius {
                continue;
            }
            let h = LinearHypothesis::new(w.to_vec(), radius).unwrap();
            let total: f64 = s.examples().iter().map(|e| loss.value(predict(&h, e.x()).unwrap(), e.y())).sum();
            prop_assert!(best <= total + 1e-9 * total.max(1.0));
        }
    }

    #[test]
    fn prediction_is_linear(
        w in proptest::collection::vec(-1.0f64..1.0, 3),
        x1 in proptest::collection::vec(-1.0f64..1.0, 3),
        x2 in proptest::collection::vec(-1.0f64..1.0, 3),
        a in -1.0f64..1.0,
        b in -1.0f64..1.0,
    ) {
        let h = LinearHypothesis::new(w, 10.0).unwrap();
        let mix: Vec<f64> = x1.iter().zip(&x2).map(|(u, v)| a * u + b * v).collect();
        let lhs = predict(&h, &mix).unwrap();
        let rhs = a * predict(&h, &x1).unwrap() + b * predict(&h, &x2).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }
}
