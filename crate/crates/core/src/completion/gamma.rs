use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numkernel::{svd, DenseMatrix};
use crate::spectra::RANK_TOL_FACTOR;

/// Computable bounds around the factorization norm `gamma_2(Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gamma2Bounds {
    /// `min(||Y||_Tr, sqrt(rank Y) max|Y_ij|)`.
    pub upper: f64,
    /// `||Y||_Tr / sqrt(nm)`.
    pub lower: f64,
    pub trace_norm: f64,
    pub rank: usize,
    pub max_abs: f64,
}

/// Upper and lower bounds on `gamma_2(Y)` from its singular values.
///
/// ```
/// use bireg::completion::gamma2_upper;
/// use bireg::numkernel::DenseMatrix;
/// let y = DenseMatrix::from_fn(4, 6, |i, j| if (i + j) % 2 == 0 { 1.0 } else { -1.0 });
/// let g = gamma2_upper(&y).unwrap();
/// assert_eq!(g.rank, 1);
/// assert!((g.upper - 1.0).abs() < 1e-12);
/// ```
pub fn gamma2_upper(y: &DenseMatrix) -> Result<Gamma2Bounds> {
    let sv = svd(y)?;
    let s1 = sv.values.first().copied().unwrap_or(0.0);
    let tol = RANK_TOL_FACTOR * s1 * y.rows().max(y.cols()) as f64;
    let rank = sv.values.iter().filter(|&&s| s > tol).count();
    let trace_norm: f64 = sv.values.iter().sum();
    let max_abs = y.max_abs();
    let upper = trace_norm.min((rank as f64).sqrt() * max_abs);
    let cells = (y.rows() * y.cols()) as f64;
    let lower = if cells > 0.0 { trace_norm / cells.sqrt() } else { 0.0 };
    Ok(Gamma2Bounds { upper, lower, trace_norm, rank, max_abs })
}

/// Sum of singular values.
pub fn trace_norm(x: &DenseMatrix) -> Result<f64> {
    Ok(svd(x)?.values.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::RngStream;

    #[test]
    fn zero_matrix() {
        let g = gamma2_upper(&DenseMatrix::zeros(3, 4)).unwrap();
        assert_eq!((g.upper, g.lower, g.rank), (0.0, 0.0, 0));
    }

    #[test]
    fn random_rank_two() {
        let mut rng = RngStream::new(4);
        let u: Vec<[f64; 2]> = (0..40).map(|_| [rng.uniform() - 0.5, rng.uniform() - 0.5]).collect();
        let v: Vec<[f64; 2]> = (0..60).map(|_| [rng.uniform() - 0.5, rng.uniform() - 0.5]).collect();
        let y = DenseMatrix::from_fn(40, 60, |i, j| 2.0 * (u[i][0] * v[j][0] + u[i][1] * v[j][1]));
        assert!(y.max_abs() <= 1.0);
        let g = gamma2_upper(&y).unwrap();
        assert_eq!(g.rank, 2);
        assert!(g.upper <= 2f64.sqrt());
        assert!(g.upper >= g.trace_norm / 2400f64.sqrt());
        assert!(g.upper >= g.lower);
    }
}
