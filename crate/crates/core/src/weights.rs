//! Discrepancy-weighted online-to-batch conversion.
//!
//! Given the trace `h_1..h_T` of an on-line learner, per-step discrepancies
//! `disc_t` to the target distribution and the learner's losses `loss_t`, the
//! weights solve
//!
//! ```text
//! min_w  lambda ||w||^2 + sum_t w_t (disc_t + loss_t)   s.t.  w >= 0, sum w = 1
//! ```
//!
//! The Hessian is `2 lambda I`, so the minimiser is the Euclidean projection
//! of `-c / (2 lambda)` onto the simplex and no iterative solver is needed.

use alloc::vec;
use alloc::vec::Vec;

use crate::discrepancy::DiscrepancyProfile;
use crate::error::{check_dim, invalid, Result};
use crate::hypothesis::LinearHypothesis;
use crate::linalg::norm;
use crate::online::Trace;

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct SimplexWeights(Vec<f64>);

impl SimplexWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(invalid("weights must be nonempty"));
        }
        if w.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(invalid("weights must be finite and nonnegative"));
        }
        let total: f64 = w.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(invalid(alloc::format!("weights sum to {total}, not 1")));
        }
        Ok(Self(w))
    }

    /// The uniform element `u_0 = (1/T, ..., 1/T)`.
    pub fn uniform(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(invalid("weights must be nonempty"));
        }
        Ok(Self(vec![1.0 / len as f64; len]))
    }

    /// Unit vector `e_k`.
    pub fn vertex(len: usize, k: usize) -> Result<Self> {
        if k >= len {
            return Err(invalid("vertex index out of range"));
        }
        let mut w = vec![0.0; len];
        w[k] = 1.0;
        Ok(Self(w))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn l2_norm(&self) -> f64 {
        norm(&self.0)
    }

    /// `||w - u_0||_1`
    pub fn l1_to_uniform(&self) -> f64 {
        let u = 1.0 / self.0.len() as f64;
        self.0.iter().map(|w| (w - u).abs()).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QpInstance {
    costs: Vec<f64>,
    lambda: f64,
}

impl QpInstance {
    pub fn new(costs: Vec<f64>, lambda: f64) -> Result<Self> {
        if costs.is_empty() {
            return Err(invalid("QP needs at least one cost"));
        }
        if costs.iter().any(|c| !c.is_finite()) {
            return Err(invalid("QP costs must be finite"));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(invalid("regularizer must be finite and nonnegative"));
        }
        Ok(Self { costs, lambda })
    }

    /// Costs `c_t = disc_t + loss_t` from a discrepancy profile and a trace.
    pub fn from_trace(profile: &DiscrepancyProfile, trace: &Trace, lambda: f64) -> Result<Self> {
        check_dim(trace.len(), profile.len())?;
        let costs = profile.values().iter().zip(trace.losses()).map(|(d, l)| d + l).collect();
        Self::new(costs, lambda)
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn objective(&self, w: &[f64]) -> f64 {
        let quad: f64 = w.iter().map(|x| x * x).sum();
        let lin: f64 = w.iter().zip(&self.costs).map(|(x, c)| x * c).sum();
        self.lambda * quad + lin
    }

    /// Largest violation of the optimality conditions at `w`: with
    /// `g_t = 2 lambda w_t + c_t` and `tau` the mean of `g` over the support,
    /// `|g_t - tau|` on the support and `max(0, tau - g_t)` off it.
    pub fn kkt_residual(&self, w: &SimplexWeights) -> f64 {
        let g: Vec<f64> = w
            .as_slice()
            .iter()
            .zip(&self.costs)
            .map(|(x, c)| 2.0 * self.lambda * x + c)
            .collect();
        let support: Vec<usize> = (0..g.len()).filter(|&t| w.as_slice()[t] > 0.0).collect();
        let tau = support.iter().map(|&t| g[t]).sum::<f64>() / support.len() as f64;
        (0..g.len())
            .map(|t| {
                if w.as_slice()[t] > 0.0 {
                    (g[t] - tau).abs()
                } else {
                    (tau - g[t]).max(0.0)
                }
            })
            .fold(0.0, f64::max)
    }
}

/// `lambda = M / sqrt(T)`, so the regulariser scales like the deviation term.
pub fn default_lambda(loss_bound: f64, horizon: usize) -> f64 {
    loss_bound / libm::sqrt(horizon.max(1) as f64)
}

/// Euclidean projection onto the probability simplex (sort-based, `O(T log T)`).
pub fn project_simplex(v: &[f64]) -> Result<SimplexWeights> {
    if v.is_empty() {
        return Err(invalid("cannot project an empty vector"));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(invalid("projection input must be finite"));
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - 1.0) / (i + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        } else {
            break;
        }
    }
    let w: Vec<f64> = v.iter().map(|x| (x - theta).max(0.0)).collect();
    SimplexWeights::new(w)
}

/// Minimise `lambda ||w||^2 + c.w` over the simplex.
///
/// For `lambda = 0` the problem is linear; the mass is split uniformly over
/// every index attaining the minimum cost.
pub fn solve_weights(qp: &QpInstance) -> Result<SimplexWeights> {
    if qp.lambda == 0.0 {
        let best = qp.costs.iter().copied().fold(f64::INFINITY, f64::min);
        let ties = qp.costs.iter().filter(|&&c| c == best).count() as f64;
        let w = qp.costs.iter().map(|&c| if c == best { 1.0 / ties } else { 0.0 }).collect();
        return SimplexWeights::new(w);
    }
    let scaled: Vec<f64> = qp.costs.iter().map(|c| -c / (2.0 * qp.lambda)).collect();
    project_simplex(&scaled)
}

/// `h = sum_t w_t h_t`. For linear hypotheses the convex combination is the
/// linear hypothesis with averaged weights and stays in the norm ball.
pub fn combine(hypotheses: &[LinearHypothesis], w: &SimplexWeights) -> Result<LinearHypothesis> {
    check_dim(hypotheses.len(), w.len())?;
    let first = hypotheses.first().ok_or_else(|| invalid("no hypotheses to combine"))?;
    let dim = first.dim();
    let bound = hypotheses.iter().fold(0.0f64, |b, h| b.max(h.norm_bound()));
    let mut acc = vec![0.0; dim];
    for (h, &wt) in hypotheses.iter().zip(w.as_slice()) {
        check_dim(dim, h.dim())?;
        if wt == 0.0 {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(h.weights()) {
            *a += wt * x;
        }
    }
    LinearHypothesis::new(acc, bound)
}

/// Terms of the two learning guarantees for a convex combination of on-line
/// hypotheses, with stable (serialised) field names.
///
/// - `expected_loss_bound = weighted_empirical_loss + avg_discrepancy + deviation_term`
///   bounds the expected loss of the combined hypothesis on the target.
/// - `excess_bound = regret_term + avg_discrepancy + uniform_distance_term + excess_deviation_term`
///   bounds its excess over the best hypothesis in the class, as stated.
/// - `excess_bound_doubled_discrepancy` is the same with `2 * avg_discrepancy`,
///   the coefficient that the derivation of that guarantee actually produces.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundReport {
    pub horizon: usize,
    pub confidence: f64,
    pub loss_bound: f64,
    pub avg_discrepancy: f64,
    pub weighted_empirical_loss: f64,
    pub weight_l2_norm: f64,
    pub weight_l1_to_uniform: f64,
    /// `M ||w||_2 sqrt(2 log(1/delta))`
    pub deviation_term: f64,
    /// `M ||w - u_0||_1`
    pub uniform_distance_term: f64,
    /// `max(R_T, 0) / T`
    pub regret_term: f64,
    /// `2 M ||w||_2 sqrt(2 log(2/delta))`
    pub excess_deviation_term: f64,
    pub expected_loss_bound: f64,
    pub excess_bound: f64,
    pub excess_bound_doubled_discrepancy: f64,
}

fn check_confidence(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(invalid("confidence delta must lie in (0, 1)"))
    }
}

/// Assemble every term for weights `w`, discrepancies, the learner's trace and
/// its regret. A negative regret is reported as 0, which only loosens the
/// excess bounds.
pub fn bound_report(
    w: &SimplexWeights,
    profile: &DiscrepancyProfile,
    trace: &Trace,
    regret: f64,
    loss_bound: f64,
    delta: f64,
) -> Result<BoundReport> {
    check_confidence(delta)?;
    check_dim(w.len(), profile.len())?;
    check_dim(w.len(), trace.len())?;
    if !(loss_bound > 0.0) || !loss_bound.is_finite() || !regret.is_finite() {
        return Err(invalid("loss bound must be positive and regret finite"));
    }
    let horizon = w.len();
    let ws = w.as_slice();
    let avg_discrepancy: f64 = ws.iter().zip(profile.values()).map(|(a, b)| a * b).sum();
    let weighted_empirical_loss: f64 = ws.iter().zip(trace.losses()).map(|(a, b)| a * b).sum();
    let weight_l2_norm = w.l2_norm();
    let weight_l1_to_uniform = w.l1_to_uniform();
    let deviation_term = loss_bound * weight_l2_norm * libm::sqrt(2.0 * libm::log(1.0 / delta));
    let uniform_distance_term = loss_bound * weight_l1_to_uniform;
    let regret_term = regret.max(0.0) / horizon as f64;
    let excess_deviation_term =
        2.0 * loss_bound * weight_l2_norm * libm::sqrt(2.0 * libm::log(2.0 / delta));
    let excess_common = regret_term + uniform_distance_term + excess_deviation_term;
    Ok(BoundReport {
        horizon,
        confidence: delta,
        loss_bound,
        avg_discrepancy,
        weighted_empirical_loss,
        weight_l2_norm,
        weight_l1_to_uniform,
        deviation_term,
        uniform_distance_term,
        regret_term,
        excess_deviation_term,
        expected_loss_bound: weighted_empirical_loss + avg_discrepancy + deviation_term,
        excess_bound: excess_common + avg_discrepancy,
        excess_bound_doubled_discrepancy: excess_common + 2.0 * avg_discrepancy,
    })
}

/// Uniform-average generalisation bound under drift:
/// `avg_loss + 2 R + avg_disc + M sqrt(log(1/delta) / (2T))`, with the
/// Rademacher complexity `R` of the loss class supplied by the caller.
pub fn drifting_generalization_bound(
    avg_loss: f64,
    loss_rademacher: f64,
    avg_discrepancy: f64,
    loss_bound: f64,
    delta: f64,
    horizon: usize,
) -> Result<f64> {
    check_confidence(delta)?;
    if [avg_loss, loss_rademacher, avg_discrepancy, loss_bound]
        .iter()
        .any(|v| !(*v >= 0.0) || !v.is_finite())
    {
        return Err(invalid("bound inputs must be finite and nonnegative"));
    }
    if horizon == 0 {
        return Err(invalid("sample size must be positive"));
    }
    let deviation = loss_bound * libm::sqrt(libm::log(1.0 / delta) / (2.0 * horizon as f64));
    Ok(avg_loss + 2.0 * loss_rademacher + avg_discrepancy + deviation)
}

/// Contraction bound for the `L_q` loss `|y' - y|^q` bounded by `M`:
/// `R(H_L) <= q M^(q-1) R(H)`.
pub fn lq_loss_rademacher(q: f64, loss_bound: f64, hypothesis_rademacher: f64) -> f64 {
    q * libm::pow(loss_bound, q - 1.0) * hypothesis_rademacher
}
