//! Divergences between distributions: the closed-form discrepancy of the
//! squared loss over a linear norm ball, and grid-based brute force for the
//! zero-one loss over first-coordinate thresholds alongside the L1 distance.
//!
//! For `h(x) = w.x` and `h'(x) = w'.x` with `||w||, ||w'|| <= L`, the pairwise
//! squared loss is `((w - w').x)^2 = u^T x x^T u` with `u` ranging over the
//! ball of radius `2L`. Hence
//!
//! ```text
//! disc(P, Q) = sup_{||u|| <= 2L} |u^T (M_P - M_Q) u| = 4 L^2 ||M_P - M_Q||_2
//! ```
//!
//! with `M = E[x x^T]`. Clipping of the loss is ignored by this estimator;
//! [`DiscrepancyProfile::from_raw`] caps values at the loss bound instead,
//! which is valid because no discrepancy of an `M`-bounded loss exceeds `M`.

mod grid;
mod moments;

pub use grid::{l1_distance, rectangle_example, threshold_discrepancy, Axis, GridDistribution, RectangleExample};
pub use moments::{
    analytic_gaussian_moments, empirical_moments, spectral_discrepancy, spectral_norm, MomentMatrix,
    POWER_ITERATION_MAX, POWER_ITERATION_TOL,
};

use alloc::vec::Vec;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Provenance {
    Analytic,
    Estimated,
    Supplied,
}

/// Per-step discrepancies `disc(D_t, D_{T+1})`, each in `[0, M]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DiscrepancyProfile {
    values: Vec<f64>,
    provenance: Provenance,
}

impl DiscrepancyProfile {
    pub fn new(values: Vec<f64>, provenance: Provenance, loss_bound: f64) -> Result<Self> {
        if values.iter().any(|v| !(0.0..=loss_bound).contains(v)) {
            return Err(invalid("discrepancy values must lie in [0, M]"));
        }
        Ok(Self { values, provenance })
    }

    /// Caps each raw value at `loss_bound`.
    pub fn from_raw(raw: Vec<f64>, provenance: Provenance, loss_bound: f64) -> Result<Self> {
        if raw.iter().any(|v| !(*v >= 0.0)) {
            return Err(invalid("discrepancy values must be nonnegative"));
        }
        let values = raw.into_iter().map(|v| v.min(loss_bound)).collect();
        Self::new(values, provenance, loss_bound)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest entry; a bound on the per-step drift when the profile holds
    /// consecutive discrepancies.
    pub fn max(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(*v))
    }
}
