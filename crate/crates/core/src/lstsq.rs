//! Least squares over the norm ball, shared by the regret comparator and
//! truncated ERM.

use alloc::vec::Vec;

use crate::error::{check_dim, invalid, Result};
use crate::hypothesis::LinearHypothesis;
use crate::linalg::{norm, project_ball, Matrix};
use crate::sample::LabeledExample;

/// Ridge added to singular normal equations.
pub const RIDGE_JITTER: f64 = 1e-10;
/// Bisection tolerance on the norm-constraint multiplier.
pub const MULTIPLIER_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct LstsqFit {
    pub hypothesis: LinearHypothesis,
    /// Whether the normal equations were singular and got [`RIDGE_JITTER`].
    pub ridge_applied: bool,
    /// Lagrange multiplier of the norm constraint (0 when inactive).
    pub multiplier: f64,
}

/// `(X^T X, X^T y)` over the given examples.
pub fn normal_equations(examples: &[LabeledExample], dim: usize) -> Result<(Matrix, Vec<f64>)> {
    let mut gram = Matrix::zeros(dim);
    let mut rhs = alloc::vec![0.0; dim];
    for ex in examples {
        check_dim(dim, ex.dim())?;
        gram.rank_one_update(1.0, ex.x());
        for (r, x) in rhs.iter_mut().zip(ex.x()) {
            *r += ex.y() * x;
        }
    }
    Ok((gram, rhs))
}

fn ridge_solve(gram: &Matrix, rhs: &[f64], nu: f64) -> Option<Vec<f64>> {
    let mut a = gram.clone();
    a.add_diagonal(nu);
    a.cholesky_solve(rhs)
}

/// Minimise `sum (w . x_t - y_t)^2` subject to `||w|| <= norm_bound`.
///
/// The unconstrained normal equations are solved first. If their solution
/// leaves the ball, the multiplier `nu` of `(X^T X + nu I) w = X^T y` is found
/// by bisection until the bracket is narrower than [`MULTIPLIER_TOL`] (relative
/// to `max(1, nu)`), and the upper end of the bracket is returned.
pub fn constrained_least_squares(
    examples: &[LabeledExample],
    dim: usize,
    norm_bound: f64,
) -> Result<LstsqFit> {
    if !(norm_bound >= 0.0) || !norm_bound.is_finite() {
        return Err(invalid("norm bound must be finite and nonnegative"));
    }
    let (gram, rhs) = normal_equations(examples, dim)?;
    let (mut w, ridge_applied) = match gram.cholesky_solve(&rhs) {
        Some(w) => (w, false),
        None => {
            let w = ridge_solve(&gram, &rhs, RIDGE_JITTER)
                .ok_or_else(|| invalid("normal equations are not positive semidefinite"))?;
            (w, true)
        }
    };
    let mut multiplier = 0.0;
    if norm(&w) > norm_bound {
        if norm_bound == 0.0 {
            w.iter_mut().for_each(|v| *v = 0.0);
        } else {
            let mut lo = 0.0;
            let mut hi = norm(&rhs) / norm_bound;
            let mut w_hi = ridge_solve(&gram, &rhs, hi).ok_or_else(|| invalid("singular system"))?;
            while hi - lo > MULTIPLIER_TOL * hi.max(1.0) {
                let mid = 0.5 * (lo + hi);
                let w_mid = ridge_solve(&gram, &rhs, mid).ok_or_else(|| invalid("singular system"))?;
                if norm(&w_mid) > norm_bound {
                    lo = mid;
                } else {
                    hi = mid;
                    w_hi = w_mid;
                }
            }
            w = w_hi;
            multiplier = hi;
        }
        project_ball(&mut w, norm_bound);
    }
    Ok(LstsqFit {
        hypothesis: LinearHypothesis::new(w, norm_bound)?,
        ridge_applied,
        multiplier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ex(x: &[f64], y: f64) -> LabeledExample {
        LabeledExample::new(x.to_vec(), y).unwrap()
    }

    #[test]
    fn inactive_constraint_is_plain_least_squares() {
        let data = [ex(&[1.0, 0.0], 2.0), ex(&[0.0, 1.0], -1.0), ex(&[1.0, 1.0], 1.0)];
        let fit = constrained_least_squares(&data, 2, 10.0).unwrap();
        assert!(!fit.ridge_applied);
        assert_eq!(fit.multiplier, 0.0);
        let w = fit.hypothesis.weights();
        assert!((w[0] - 2.0).abs() < 1e-12 && (w[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn active_constraint_lands_on_boundary() {
        // Unconstrained optimum is (3, 0); with radius 1 the answer is (1, 0).
        let data = [ex(&[1.0, 0.0], 3.0), ex(&[0.0, 1.0], 0.0)];
        let fit = constrained_least_squares(&data, 2, 1.0).unwrap();
        let w = fit.hypothesis.weights();
        assert!((w[0] - 1.0).abs() < 1e-8 && w[1].abs() < 1e-12, "{w:?}");
        // Stationarity: (1 + nu) * 1 = 3
        assert!((fit.multiplier - 2.0).abs() < 1e-6);
    }

    #[test]
    fn singular_system_gets_ridge() {
        let data = [ex(&[1.0, 1.0], 2.0)];
        let fit = constrained_least_squares(&data, 2, 10.0).unwrap();
        assert!(fit.ridge_applied);
        let w = fit.hypothesis.weights();
        // Minimum-norm interpolant (1, 1).
        assert!((w[0] - 1.0).abs() < 1e-8 && (w[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn empty_input_gives_zero() {
        let fit = constrained_least_squares(&[], 3, 1.0).unwrap();
        assert_eq!(fit.hypothesis.weights(), &vec![0.0; 3][..]);
    }
}
