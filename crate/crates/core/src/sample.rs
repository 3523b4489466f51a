use alloc::vec::Vec;

use crate::error::{check_dim, invalid, Result};

/// One observation `(x_t, y_t)`. All coordinates are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledExample {
    x: Vec<f64>,
    y: f64,
}

impl LabeledExample {
    pub fn new(x: Vec<f64>, y: f64) -> Result<Self> {
        if !y.is_finite() || x.iter().any(|v| !v.is_finite()) {
            return Err(invalid("example coordinates must be finite"));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
}

/// Temporally ordered sample; time step `t` (1-based) is stored at index `t - 1`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Sample {
    examples: Vec<LabeledExample>,
}

impl Sample {
    /// All examples must share one feature dimension.
    pub fn new(examples: Vec<LabeledExample>) -> Result<Self> {
        if let Some(first) = examples.first() {
            let d = first.dim();
            for ex in &examples {
                check_dim(d, ex.dim())?;
            }
        }
        Ok(Self { examples })
    }

    pub fn examples(&self) -> &[LabeledExample] {
        &self.examples
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    /// Feature dimension, `None` for an empty sample.
    pub fn dim(&self) -> Option<usize> {
        self.examples.first().map(LabeledExample::dim)
    }

    /// The last `m` examples.
    pub fn tail(&self, m: usize) -> &[LabeledExample] {
        &self.examples[self.examples.len().saturating_sub(m)..]
    }
}

impl FromIterator<LabeledExample> for Result<Sample> {
    fn from_iter<I: IntoIterator<Item = LabeledExample>>(iter: I) -> Self {
        Sample::new(iter.into_iter().collect())
    }
}
