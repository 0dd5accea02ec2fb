use serde::{Deserialize, Serialize};

use crate::clustering::frame_markov;
use crate::error::{Error, Result};
use crate::graphgen::Frame;
use crate::numkernel::DenseMatrix;

/// Ramanujan-type bound on the symmetrized Markov block between two
/// classes: `(sqrt(D_kl - 1) + sqrt(D_lk - 1)) / sqrt(D_kl D_lk)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockRatio {
    pub k: usize,
    pub l: usize,
    pub ratio: f64,
}

/// Bound on the eigenvalues of `P` that are not eigenvalues of `R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WanBound {
    pub c: f64,
    /// `C * max_k (R_kk + sum_{l != k} sqrt(R_kl R_lk))`.
    pub bound: f64,
    /// `(C / 2) * (1 + max_k sum_l R_lk)`.
    pub loose_bound: f64,
    pub block_ratios: Vec<BlockRatio>,
}

/// Per-block ratios for every frame edge with both directions present.
/// A diagonal block reduces to `2 sqrt(D_kk - 1) / D_kk`.
pub fn block_ratios(frame: &Frame) -> Vec<BlockRatio> {
    let k = frame.num_classes();
    let mut out = Vec::new();
    for a in 0..k {
        for b in a..k {
            let (dab, dba) = (frame.degrees[a][b] as f64, frame.degrees[b][a] as f64);
            if dab == 0.0 || dba == 0.0 {
                continue;
            }
            let ratio = ((dab - 1.0).sqrt() + (dba - 1.0).sqrt()) / (dab * dba).sqrt();
            out.push(BlockRatio { k: a, l: b, ratio });
        }
    }
    out
}

/// A constant `C` covering every block: the largest block ratio plus `epsilon`.
pub fn suggested_c(frame: &Frame, epsilon: f64) -> f64 {
    block_ratios(frame).iter().map(|b| b.ratio).fold(0.0, f64::max) + epsilon
}

/// Evaluate the spurious-eigenvalue bound for a given `C` in `(0, 1)`.
///
/// The frame degree matrix must be nonsingular.
///
/// ```
/// use bireg::clustering::wan_bound;
/// use bireg::graphgen::Frame;
/// let frame = Frame::bipartite(100, 1000, 60, 6).unwrap();
/// let w = wan_bound(&frame, 0.6).unwrap();
/// assert!((w.block_ratios[0].ratio - 0.5227).abs() < 1e-4);
/// ```
pub fn wan_bound(frame: &Frame, c: f64) -> Result<WanBound> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameters(format!("C must lie in (0, 1), got {c}")));
    }
    frame.validate()?;
    if is_rank_deficient(&frame.degree_matrix()) {
        return Err(Error::Singular("frame degree matrix has a zero eigenvalue".into()));
    }
    let r = frame_markov(frame)?.r;
    let k = r.len();
    let row_term = (0..k)
        .map(|a| r[a][a] + (0..k).filter(|&b| b != a).map(|b| (r[a][b] * r[b][a]).sqrt()).sum::<f64>())
        .fold(0.0, f64::max);
    let col_sum = (0..k).map(|a| (0..k).map(|b| r[b][a]).sum::<f64>()).fold(0.0, f64::max);
    Ok(WanBound { c, bound: c * row_term, loose_bound: 0.5 * c * (1.0 + col_sum), block_ratios: block_ratios(frame) })
}

/// Exact singularity test for an integer matrix (fraction-free elimination).
fn is_rank_deficient(d: &DenseMatrix) -> bool {
    let n = d.rows();
    let mut a: Vec<Vec<i128>> = (0..n).map(|i| d.row(i).iter().map(|&x| x as i128).collect()).collect();
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return true;
        };
        a.swap(k, p);
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    false
}
