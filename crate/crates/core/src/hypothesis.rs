use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_dim, invalid, Result};
use crate::linalg::{dot, norm, project_ball};

/// `x -> w . x` with `||w|| <= norm_bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearHypothesis {
    weights: Vec<f64>,
    norm_bound: f64,
}

impl LinearHypothesis {
    /// Weights outside the ball are rescaled onto its boundary.
    pub fn new(mut weights: Vec<f64>, norm_bound: f64) -> Result<Self> {
        if !(norm_bound >= 0.0) || !norm_bound.is_finite() {
            return Err(invalid("norm bound must be finite and nonnegative"));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(invalid("hypothesis weights must be finite"));
        }
        project_ball(&mut weights, norm_bound);
        Ok(Self { weights, norm_bound })
    }

    pub fn zero(dim: usize, norm_bound: f64) -> Result<Self> {
        Self::new(vec![0.0; dim], norm_bound)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn norm_bound(&self) -> f64 {
        self.norm_bound
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.weights)
    }

    /// Inner product without the dimension check.
    #[inline]
    pub(crate) fn apply(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x)
    }
}

pub fn predict(h: &LinearHypothesis, x: &[f64]) -> Result<f64> {
    check_dim(h.dim(), x.len())?;
    Ok(h.apply(x))
}
