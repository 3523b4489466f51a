use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// One axis of a regular grid: `resolution` equal cells spanning `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub resolution: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, resolution: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) || resolution == 0 {
            return Err(invalid("axis needs finite min < max and at least one cell"));
        }
        Ok(Self { min, max, resolution })
    }

    /// Lower and upper boundary of cell `i`.
    pub fn cell(&self, i: usize) -> (f64, f64) {
        let span = self.max - self.min;
        let n = self.resolution as f64;
        (self.min + span * i as f64 / n, self.min + span * (i + 1) as f64 / n)
    }

    /// Cell containing `v` under half-open `[lo, hi)` cells; the upper edge
    /// belongs to the last cell.
    pub fn locate(&self, v: f64) -> Option<usize> {
        if !(self.min..=self.max).contains(&v) {
            return None;
        }
        let idx = ((v - self.min) / (self.max - self.min) * self.resolution as f64) as usize;
        Some(idx.min(self.resolution - 1))
    }
}

/// Piecewise-constant density on a box, stored as per-cell probabilities in
/// row-major order (the last axis varies fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct GridDistribution {
    axes: Vec<Axis>,
    probabilities: Vec<f64>,
}

impl GridDistribution {
    /// Probabilities must be nonnegative and sum to 1 within `1e-9`.
    pub fn new(axes: Vec<Axis>, probabilities: Vec<f64>) -> Result<Self> {
        if axes.is_empty() {
            return Err(invalid("grid needs at least one axis"));
        }
        for a in &axes {
            Axis::new(a.min, a.max, a.resolution)?;
        }
        let cells: usize = axes.iter().map(|a| a.resolution).product();
        if probabilities.len() != cells {
            return Err(invalid(alloc::format!(
                "expected {cells} cell probabilities, got {}",
                probabilities.len()
            )));
        }
        if probabilities.iter().any(|p| !(*p >= 0.0) || !p.is_finite()) {
            return Err(invalid("cell probabilities must be finite and nonnegative"));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(invalid(alloc::format!("cell probabilities sum to {total}, not 1")));
        }
        Ok(Self { axes, probabilities })
    }

    /// Uniform distribution on the axis-aligned box `[lo, hi]`, discretised by
    /// exact cell-overlap volumes.
    pub fn uniform_box(axes: Vec<Axis>, lo: &[f64], hi: &[f64]) -> Result<Self> {
        if lo.len() != axes.len() || hi.len() != axes.len() {
            return Err(invalid("box corners must match the grid dimension"));
        }
        if lo.iter().zip(hi).any(|(l, h)| !(l < h)) {
            return Err(invalid("box must have positive volume"));
        }
        // Per-axis overlap fractions; the product over axes gives cell mass.
        let fractions: Vec<Vec<f64>> = axes
            .iter()
            .zip(lo.iter().zip(hi))
            .map(|(axis, (&l, &h))| {
                (0..axis.resolution)
                    .map(|i| {
                        let (a, b) = axis.cell(i);
                        (b.min(h) - a.max(l)).max(0.0) / (h - l)
                    })
                    .collect()
            })
            .collect();
        let mut probabilities = vec![1.0];
        for frac in &fractions {
            probabilities = probabilities
                .iter()
                .flat_map(|p| frac.iter().map(move |f| p * f))
                .collect();
        }
        Self::new(axes, probabilities)
    }

    /// All mass in the cell containing `point`.
    pub fn point_mass(axes: Vec<Axis>, point: &[f64]) -> Result<Self> {
        if point.len() != axes.len() {
            return Err(invalid("point must match the grid dimension"));
        }
        let mut flat = 0usize;
        for (axis, &v) in axes.iter().zip(point) {
            let i = axis.locate(v).ok_or_else(|| invalid("point lies outside the grid"))?;
            flat = flat * axis.resolution + i;
        }
        let cells: usize = axes.iter().map(|a| a.resolution).product();
        let mut probabilities = vec![0.0; cells];
        probabilities[flat] = 1.0;
        Self::new(axes, probabilities)
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn same_geometry(&self, other: &Self) -> bool {
        self.axes == other.axes
    }

    /// Marginal over the first axis.
    pub fn first_axis_marginal(&self) -> Vec<f64> {
        let n0 = self.axes[0].resolution;
        let stride = self.probabilities.len() / n0;
        self.probabilities.chunks_exact(stride).map(|row| row.iter().sum()).collect()
    }
}

fn check_geometry(p: &GridDistribution, q: &GridDistribution) -> Result<()> {
    if p.same_geometry(q) {
        Ok(())
    } else {
        Err(invalid("grid geometries differ"))
    }
}

/// Discrepancy of the zero-one loss over thresholds `x -> 1[x_1 > h]`.
///
/// Two thresholds disagree exactly on a stripe `h < x_1 <= h'`, so the value
/// is the largest `|P(stripe) - Q(stripe)|`. For piecewise-constant densities
/// the supremum is attained with thresholds on cell boundaries, where it
/// equals `max_k D_k - min_k D_k` for the prefix sums `D_k` of the marginal
/// difference.
pub fn threshold_discrepancy(p: &GridDistribution, q: &GridDistribution) -> Result<f64> {
    check_geometry(p, q)?;
    let (mp, mq) = (p.first_axis_marginal(), q.first_axis_marginal());
    let (mut acc, mut hi, mut lo) = (0.0f64, 0.0f64, 0.0f64);
    for (a, b) in mp.iter().zip(&mq) {
        acc += a - b;
        hi = hi.max(acc);
        lo = lo.min(acc);
    }
    Ok(hi - lo)
}

/// `sum_cells |P - Q|`.
pub fn l1_distance(p: &GridDistribution, q: &GridDistribution) -> Result<f64> {
    check_geometry(p, q)?;
    Ok(p.probabilities
        .iter()
        .zip(&q.probabilities)
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// The two overlapping rectangles separating L1 distance from discrepancy.
#[derive(Debug, Clone, PartialEq)]
pub struct RectangleExample {
    /// Uniform on `[-1, 1] x [-1, R]`.
    pub p: GridDistribution,
    /// Uniform on `[-1, 1] x [-R, 1]`.
    pub q: GridDistribution,
    /// `2 (R - 1) / (R + 1)`.
    pub analytic_l1: f64,
}

/// Both measures share the first-coordinate marginal (uniform on `[-1, 1]`),
/// so every threshold stripe has equal mass under each and the threshold
/// discrepancy is 0, while their L1 distance tends to 2 as `R` grows.
/// The grid covers `[-1, 1] x [-R, R]` with `resolution` cells per axis.
pub fn rectangle_example(r: f64, resolution: usize) -> Result<RectangleExample> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(invalid("rectangle example needs finite R > 1"));
    }
    let axes = vec![Axis::new(-1.0, 1.0, resolution)?, Axis::new(-r, r, resolution)?];
    let p = GridDistribution::uniform_box(axes.clone(), &[-1.0, -1.0], &[1.0, r])?;
    let q = GridDistribution::uniform_box(axes, &[-1.0, -r], &[1.0, 1.0])?;
    Ok(RectangleExample { p, q, analytic_l1: 2.0 * (r - 1.0) / (r + 1.0) })
}
