//! Learning under drifting distributions with discrepancy-aware guarantees.
//!
//! The crate is `no_std` and only needs `alloc`. All transcendental functions
//! go through [`libm`], so every computation (and every random draw) is
//! bit-reproducible across platforms.
//!
//! Modules:
//!
//! - [`loss`], [`sample`], [`hypothesis`], [`rng`]: shared domain types.
//! - [`online`]: the Widrow-Hoff base learner, its trace, and exact regret.
//! - [`discrepancy`]: spectral, threshold-class and L1 divergences.
//! - [`weights`]: the discrepancy-weighted simplex QP and bound reports.
//! - [`erm`]: truncated-window ERM, optimal window size, tracking simulation.
//! - [`harness`]: synthetic drift generator and the three-way comparison.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod discrepancy;
pub mod erm;
mod error;
pub mod harness;
pub mod hypothesis;
pub mod linalg;
pub mod loss;
pub mod lstsq;
pub mod online;
pub mod rng;
pub mod sample;
pub mod weights;

pub use error::{Error, Result};
pub use hypothesis::{predict, LinearHypothesis};
pub use loss::{evaluate_loss, Loss, LossKind};
pub use rng::RngState;
pub use sample::{LabeledExample, Sample};
