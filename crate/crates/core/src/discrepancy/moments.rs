use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_dim, invalid, Error, Result};
use crate::linalg::{dot, norm, Matrix};
use crate::rng::RngState;

pub const POWER_ITERATION_TOL: f64 = 1e-10;
pub const POWER_ITERATION_MAX: usize = 100_000;
const RESTART_SEED: u64 = 0x6469_7363_7265_7061;

/// Symmetric positive semidefinite second-moment matrix `E[x x^T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrix(Matrix);

impl MomentMatrix {
    /// Checks symmetry to `1e-12` (relative to the largest entry, floor 1) and
    /// that the smallest eigenvalue is at least `-1e-9 * trace`.
    pub fn new(m: Matrix) -> Result<Self> {
        if m.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(invalid("moment matrix entries must be finite"));
        }
        if m.max_asymmetry() > 1e-12 * m.max_abs().max(1.0) {
            return Err(invalid("moment matrix must be symmetric"));
        }
        if m.dim() > 0 {
            let smallest = m.symmetric_eigenvalues()[0];
            if smallest < -1e-9 * m.trace().abs() {
                return Err(invalid("moment matrix must be positive semidefinite"));
            }
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            check_dim(n, row.len())?;
            data.extend_from_slice(row);
        }
        Self::new(Matrix::from_row_major(n, data).expect("square by construction"))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j)
    }
}

/// `(1/n) sum x x^T`, symmetrized.
pub fn empirical_moments<P: AsRef<[f64]>>(points: &[P]) -> Result<MomentMatrix> {
    let first = points.first().ok_or_else(|| invalid("no points"))?;
    let d = first.as_ref().len();
    let mut m = Matrix::zeros(d);
    for p in points {
        let x = p.as_ref();
        check_dim(d, x.len())?;
        m.rank_one_update(1.0, x);
    }
    m.scale(1.0 / points.len() as f64);
    m.symmetrize();
    MomentMatrix::new(m)
}

/// `sigma^2 I + mean mean^T`, the second moment of `N(mean, sigma^2 I)`.
pub fn analytic_gaussian_moments(mean: &[f64], variance: f64) -> Result<MomentMatrix> {
    if !(variance > 0.0) || !variance.is_finite() {
        return Err(invalid("variance must be finite and positive"));
    }
    let mut m = Matrix::identity(mean.len());
    m.scale(variance);
    m.rank_one_update(1.0, mean);
    MomentMatrix::new(m)
}

fn rayleigh_power(s: &Matrix, mut v: Vec<f64>) -> Result<f64> {
    let mut rho = 0.0;
    for _ in 0..POWER_ITERATION_MAX {
        let sv = s.matvec(&v);
        let n = norm(&sv);
        if n == 0.0 {
            return Ok(0.0);
        }
        let next: Vec<f64> = sv.iter().map(|x| x / n).collect();
        let rho_next = dot(&next, &s.matvec(&next));
        let converged = (rho_next - rho).abs() <= POWER_ITERATION_TOL * rho_next.abs();
        rho = rho_next;
        v = next;
        if converged {
            return Ok(rho);
        }
    }
    Err(Error::NonConvergence { iterations: POWER_ITERATION_MAX })
}

/// Spectral norm of a symmetric matrix by power iteration on its square.
///
/// Two starts are used: the normalised all-ones vector and one fixed-seed
/// random unit vector, so that a start orthogonal to the top eigenvector
/// cannot hide it. The larger Rayleigh quotient wins.
pub fn spectral_norm(d: &Matrix) -> Result<f64> {
    let n = d.dim();
    if n == 0 || d.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let mut sq = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let v = (0..n).map(|k| d.get(i, k) * d.get(k, j)).sum();
            sq.set(i, j, v);
        }
    }
    sq.symmetrize();
    let ones = vec![1.0 / libm::sqrt(n as f64); n];
    let mut rng = RngState::new(RESTART_SEED);
    let mut random: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
    let rn = norm(&random);
    random.iter_mut().for_each(|x| *x /= rn);
    let top = rayleigh_power(&sq, ones)?.max(rayleigh_power(&sq, random)?);
    Ok(libm::sqrt(top.max(0.0)))
}

/// `4 L^2 ||A - B||_2`: the discrepancy of the unclipped squared loss over
/// linear hypotheses with norm at most `norm_bound`.
pub fn spectral_discrepancy(a: &MomentMatrix, b: &MomentMatrix, norm_bound: f64) -> Result<f64> {
    check_dim(a.dim(), b.dim())?;
    if !(norm_bound >= 0.0) || !norm_bound.is_finite() {
        return Err(invalid("norm bound must be finite and nonnegative"));
    }
    // B - A is the exact negation of A - B and only its square is iterated,
    // so swapping the arguments gives a bit-identical result.
    let diff = a.0.sub(&b.0);
    Ok(4.0 * norm_bound * norm_bound * spectral_norm(&diff)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn mm(rows: &[&[f64]]) -> MomentMatrix {
        MomentMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identical_is_zero() {
        let a = mm(&[&[2.0, 0.3], &[0.3, 1.0]]);
        assert_eq!(spectral_discrepancy(&a, &a, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn one_dimensional_case() {
        // brute force: sup over u in [-2, 2] of |u^2 (1 - 2)| = 4
        let brute = (0..=4000)
            .map(|i| -2.0 + i as f64 * 1e-3)
            .map(|u: f64| (u * u * (1.0 - 2.0)).abs())
            .fold(0.0, f64::max);
        let got = spectral_discrepancy(&mm(&[&[1.0]]), &mm(&[&[2.0]]), 1.0).unwrap();
        assert!((got - brute).abs() < 1e-9, "{got} vs {brute}");
    }

    #[test]
    fn quadratic_in_norm_bound() {
        let a = mm(&[&[2.0, 0.5], &[0.5, 1.0]]);
        let b = mm(&[&[1.0, 0.0], &[0.0, 1.5]]);
        let d1 = spectral_discrepancy(&a, &b, 1.5).unwrap();
        let d2 = spectral_discrepancy(&a, &b, 3.0).unwrap();
        assert!((d2 - 4.0 * d1).abs() <= 1e-12 * d2);
    }

    #[test]
    fn orthogonal_start_is_recovered() {
        // Top eigenvector (1, -1) is orthogonal to the all-ones start.
        let d = Matrix::from_row_major(2, vec![0.0, -1.0, -1.0, 0.0]).unwrap();
        assert!((spectral_norm(&d).unwrap() - 1.0).abs() < 1e-12);
        let d = Matrix::from_row_major(2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        assert!((spectral_norm(&d).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn empirical_examples() {
        let single = empirical_moments(&[[1.0, 0.0]]).unwrap();
        assert_eq!(single.matrix().as_slice(), &[1.0, 0.0, 0.0, 0.0]);
        let pair = empirical_moments(&[[1.0, 0.0], [-1.0, 0.0]]).unwrap();
        assert_eq!(pair.matrix().as_slice(), &[1.0, 0.0, 0.0, 0.0]);
        assert!(empirical_moments::<[f64; 2]>(&[]).is_err());
        assert!(empirical_moments(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn empirical_standard_normal() {
        let mut rng = RngState::new(11);
        let n = 10_000;
        let pts: Vec<[f64; 2]> = (0..n).map(|_| [rng.standard_normal(), rng.standard_normal()]).collect();
        let m = empirical_moments(&pts).unwrap();
        let tol = 3.0 / libm::sqrt(n as f64);
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((m.get(i, j) - target).abs() < tol.min(0.05), "{i}{j}: {}", m.get(i, j));
            }
        }
    }

    #[test]
    fn analytic_examples() {
        assert_eq!(
            analytic_gaussian_moments(&[0.0, 0.0], 1.0).unwrap().matrix().as_slice(),
            &[1.0, 0.0, 0.0, 1.0]
        );
        assert_eq!(
            analytic_gaussian_moments(&[1.0, 0.0], 1.0).unwrap().matrix().as_slice(),
            &[2.0, 0.0, 0.0, 1.0]
        );
        assert!(analytic_gaussian_moments(&[0.0], 0.0).is_err());
    }

    #[test]
    fn analytic_matches_monte_carlo() {
        let mean = [0.7, -1.2];
        let mut rng = RngState::new(2024);
        let pts: Vec<[f64; 2]> = (0..1_000_000)
            .map(|_| [mean[0] + rng.standard_normal(), mean[1] + rng.standard_normal()])
            .collect();
        let emp = empirical_moments(&pts).unwrap();
        let ana = analytic_gaussian_moments(&mean, 1.0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((emp.get(i, j) - ana.get(i, j)).abs() < 0.02);
            }
        }
    }

    #[test]
    fn rejects_non_psd_and_asymmetric() {
        assert!(MomentMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_err());
        assert!(MomentMatrix::from_rows(&[vec![1.0, 0.1], vec![0.0, 1.0]]).is_err());
        let a = mm(&[&[1.0]]);
        let b = mm(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(spectral_discrepancy(&a, &b, 1.0).is_err());
    }

    fn psd(entries: &[f64], d: usize) -> MomentMatrix {
        // G G^T for a d x d factor G
        let mut m = Matrix::zeros(d);
        for col in 0..d {
            let g: Vec<f64> = (0..d).map(|row| entries[row * d + col]).collect();
            m.rank_one_update(1.0, &g);
        }
        m.symmetrize();
        MomentMatrix::new(m).unwrap()
    }

    proptest! {
        #[test]
        fn symmetric_and_triangle(
            d in 1usize..=3,
            ea in proptest::collection::vec(-2.0f64..2.0, 9),
            eb in proptest::collection::vec(-2.0f64..2.0, 9),
            ec in proptest::collection::vec(-2.0f64..2.0, 9),
            lam in 0.1f64..5.0,
        ) {
            let (a, b, c) = (psd(&ea, d), psd(&eb, d), psd(&ec, d));
            let ab = spectral_discrepancy(&a, &b, lam).unwrap();
            prop_assert_eq!(ab, spectral_discrepancy(&b, &a, lam).unwrap());
            let ac = spectral_discrepancy(&a, &c, lam).unwrap();
            let bc = spectral_discrepancy(&b, &c, lam).unwrap();
            prop_assert!(ac <= ab + bc + 1e-9 * (1.0 + ab + bc));
        }

        #[test]
        fn agrees_with_jacobi(d in 1usize..=3, ea in proptest::collection::vec(-2.0f64..2.0, 9),
                              eb in proptest::collection::vec(-2.0f64..2.0, 9)) {
            let (a, b) = (psd(&ea, d), psd(&eb, d));
            let eig = a.matrix().sub(b.matrix()).symmetric_eigenvalues();
            let exact = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let got = spectral_discrepancy(&a, &b, 1.0).unwrap() / 4.0;
            prop_assert!((got - exact).abs() <= 1e-6 * (1.0 + exact), "{} vs {}", got, exact);
        }
    }
}
