use crate::error::{invalid, Result};

/// Default clipping ceiling for the squared loss.
pub const DEFAULT_LOSS_CLIP: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum LossKind {
    Squared,
    ZeroOne,
}

/// A loss bounded by `bound`. The squared loss is clipped at `bound`; the
/// zero-one loss always has `bound == 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Loss {
    kind: LossKind,
    bound: f64,
}

impl Loss {
    pub fn squared(clip: f64) -> Result<Self> {
        if !(clip > 0.0) || !clip.is_finite() {
            return Err(invalid("loss bound must be finite and positive"));
        }
        Ok(Self { kind: LossKind::Squared, bound: clip })
    }

    pub fn zero_one() -> Self {
        Self { kind: LossKind::ZeroOne, bound: 1.0 }
    }

    pub fn kind(&self) -> LossKind {
        self.kind
    }

    /// The ceiling `M`.
    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// Loss value assuming finite inputs.
    #[inline]
    pub fn value(&self, prediction: f64, label: f64) -> f64 {
        match self.kind {
            LossKind::Squared => {
                let r = prediction - label;
                (r * r).min(self.bound)
            }
            LossKind::ZeroOne => {
                // sign(0) = +1
                if (prediction >= 0.0) == (label >= 0.0) {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }
}

impl Default for Loss {
    fn default() -> Self {
        Self { kind: LossKind::Squared, bound: DEFAULT_LOSS_CLIP }
    }
}

pub fn evaluate_loss(loss: &Loss, prediction: f64, label: f64) -> Result<f64> {
    if !prediction.is_finite() || !label.is_finite() {
        return Err(invalid("loss arguments must be finite"));
    }
    Ok(loss.value(prediction, label))
}

/// Unclipped squared error.
#[inline]
pub fn raw_squared(prediction: f64, label: f64) -> f64 {
    let r = prediction - label;
    r * r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn squared_examples() {
        let l = Loss::squared(4.0).unwrap();
        assert_eq!(evaluate_loss(&l, 1.0, 0.5).unwrap(), 0.25);
        assert_eq!(evaluate_loss(&l, 0.7, 0.7).unwrap(), 0.0);
        assert_eq!(evaluate_loss(&l, 3.0, 0.0).unwrap(), 4.0);
    }

    #[test]
    fn zero_one_ties_to_positive() {
        let l = Loss::zero_one();
        assert_eq!(l.value(0.0, 1.0), 0.0);
        assert_eq!(l.value(0.0, -1.0), 1.0);
        assert_eq!(l.value(-2.0, -0.5), 0.0);
        assert_eq!(l.value(0.0, 0.0), 0.0);
    }

    #[test]
    fn non_finite_rejected() {
        let l = Loss::default();
        assert!(evaluate_loss(&l, f64::NAN, 0.0).is_err());
        assert!(evaluate_loss(&l, 0.0, f64::INFINITY).is_err());
        assert!(Loss::squared(0.0).is_err());
    }

    proptest! {
        #[test]
        fn bounded_and_symmetric(p in -1e3f64..1e3, y in -1e3f64..1e3, m in 0.1f64..1e3) {
            let l = Loss::squared(m).unwrap();
            let v = l.value(p, y);
            prop_assert!((0.0..=m).contains(&v));
            prop_assert_eq!(v, l.value(y, p));
            let z = Loss::zero_one().value(p, y);
            prop_assert!(z == 0.0 || z == 1.0);
        }
    }
}
