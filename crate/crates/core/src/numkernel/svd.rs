use crate::error::{Error, Result};
use crate::numkernel::DenseMatrix;

const MAX_SWEEPS: usize = 100;
const ORTHO_TOL: f64 = 1e-15;
/// Singular values below this fraction of the largest are set to zero.
pub const CLAMP_REL: f64 = 1e-13;
/// Columns with squared norm below this fraction of `||X||_F^2` are left alone.
const NEGLIGIBLE_REL: f64 = 1e-32;

/// Thin SVD `X = U diag(S) V^T` with `k = min(rows, cols)` columns in `U`
/// and `V`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub values: Vec<f64>,
    pub left: DenseMatrix,
    pub right: DenseMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> DenseMatrix {
        let (r, c, k) = (self.left.rows(), self.right.rows(), self.values.len());
        DenseMatrix::from_fn(r, c, |i, j| {
            (0..k).map(|l| self.left[(i, l)] * self.values[l] * self.right[(j, l)]).sum()
        })
    }

    /// Number of singular values strictly above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.values.iter().filter(|&&s| s > tol).count()
    }
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(x: &DenseMatrix) -> Result<Svd> {
    jacobi(x, None)
}

/// [`svd`] warm-started from the right factor of a nearby matrix's
/// decomposition; sweeps converge much faster when `x` is a small
/// perturbation of the matrix `start` came from.
pub fn svd_warm(x: &DenseMatrix, start: &Svd) -> Result<Svd> {
    jacobi(x, Some(start))
}

fn jacobi(x: &DenseMatrix, start: Option<&Svd>) -> Result<Svd> {
    if x.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let transposed = x.rows() < x.cols();
    let a = if transposed { x.transpose() } else { x.clone() };
    let (rows, cols) = (a.rows(), a.cols());

    let basis = start.map(|s| if transposed { &s.left } else { &s.right }).filter(|b| (b.rows(), b.cols()) == (cols, cols));
    let mut v: Vec<Vec<f64>> = match basis {
        Some(b) => (0..cols).map(|j| b.col(j)).collect(),
        None => (0..cols).map(|j| (0..cols).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect(),
    };
    // columns of A V, orthogonalized in place
    let mut w: Vec<Vec<f64>> = match basis {
        Some(_) => v.iter().map(|vj| (0..rows).map(|i| (0..cols).map(|k| a[(i, k)] * vj[k]).sum()).collect()).collect(),
        None => (0..cols).map(|j| a.col(j)).collect(),
    };

    let floor = NEGLIGIBLE_REL * a.as_slice().iter().map(|x| x * x).sum::<f64>();
    let mut converged = cols < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (wp, wq) = pair(&mut w, p, q);
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for (a, b) in wp.iter().zip(wq.iter()) {
                    alpha += a * a;
                    beta += b * b;
                    gamma += a * b;
                }
                if gamma == 0.0 || alpha <= floor || beta <= floor || gamma.abs() <= ORTHO_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for (a, b) in wp.iter_mut().zip(wq.iter_mut()) {
                    let (xa, xb) = (*a, *b);
                    *a = c * xa - s * xb;
                    *b = s * xa + c * xb;
                }
                let (vp, vq) = pair(&mut v, p, q);
                for (a, b) in vp.iter_mut().zip(vq.iter_mut()) {
                    let (xa, xb) = (*a, *b);
                    *a = c * xa - s * xb;
                    *b = s * xa + c * xb;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence { method: "one-sided jacobi svd", iterations: MAX_SWEEPS });
    }

    let norms: Vec<f64> = w.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let s1 = norms.iter().cloned().fold(0.0, f64::max);

    let mut values = Vec::with_capacity(cols);
    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(cols);
    let mut v_cols: Vec<Vec<f64>> = Vec::with_capacity(cols);
    let mut missing = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        let s = norms[j];
        if s <= CLAMP_REL * s1 || s == 0.0 {
            values.push(0.0);
            u_cols.push(vec![0.0; rows]);
            missing.push(k);
        } else {
            values.push(s);
            u_cols.push(w[j].iter().map(|x| x / s).collect());
        }
        v_cols.push(v[j].clone());
    }
    complete_orthonormal(&mut u_cols, &missing);

    let u = DenseMatrix::from_fn(rows, cols, |i, k| u_cols[k][i]);
    let vm = DenseMatrix::from_fn(cols, cols, |i, k| v_cols[k][i]);
    let (left, right) = if transposed { (vm, u) } else { (u, vm) };
    Ok(Svd { values, left, right })
}

fn pair(cols: &mut [Vec<f64>], p: usize, q: usize) -> (&mut Vec<f64>, &mut Vec<f64>) {
    let (lo, hi) = cols.split_at_mut(q);
    (&mut lo[p], &mut hi[0])
}

/// Fill the listed (zero) columns with unit vectors orthogonal to every other
/// column, by Gram-Schmidt against the standard basis.
fn complete_orthonormal(cols: &mut [Vec<f64>], missing: &[usize]) {
    if missing.is_empty() {
        return;
    }
    let dim = cols[0].len();
    let mut candidate = 0;
    for &k in missing {
        while candidate < dim {
            let mut e = vec![0.0; dim];
            e[candidate] = 1.0;
            candidate += 1;
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for (j, c) in cols.iter().enumerate() {
                    if j == k {
                        continue;
                    }
                    let dot: f64 = c.iter().zip(&e).map(|(a, b)| a * b).sum();
                    for (x, y) in e.iter_mut().zip(c) {
                        *x -= dot * y;
                    }
                }
            }
            let norm = e.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                cols[k] = e.into_iter().map(|x| x / norm).collect();
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{sym_eig, RngStream};

    fn random(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
        let mut rng = RngStream::new(seed);
        DenseMatrix::from_fn(rows, cols, |_, _| rng.normal())
    }

    #[test]
    fn rank_one_all_ones() {
        let x = DenseMatrix::from_vec(2, 3, vec![1.0; 6]).unwrap();
        let s = svd(&x).unwrap();
        assert!((s.values[0] - 6f64.sqrt()).abs() < 1e-14);
        assert_eq!(s.values[1], 0.0);
        assert!(s.reconstruct().sub(&x).max_abs() < 1e-14);
    }

    #[test]
    fn zero_matrix() {
        let s = svd(&DenseMatrix::zeros(3, 4)).unwrap();
        assert_eq!(s.values, vec![0.0; 3]);
    }

    #[test]
    fn matches_gram_eigenvalues() {
        let x = random(5, 7, 1);
        let s = svd(&x).unwrap();
        let gram = x.matmul(&x.transpose()).unwrap();
        let e = sym_eig(&gram).unwrap();
        for (sv, ev) in s.values.iter().zip(&e.values) {
            assert!((sv - ev.max(0.0).sqrt()).abs() < 1e-8);
        }
        let scale = x.frobenius_norm();
        assert!(s.reconstruct().sub(&x).max_abs() < 1e-9 * scale);
    }

    #[test]
    fn transpose_has_same_singular_values() {
        let x = random(6, 4, 2);
        let a = svd(&x).unwrap();
        let b = svd(&x.transpose()).unwrap();
        for (p, q) in a.values.iter().zip(&b.values) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_vectors_are_orthonormal_with_rank_deficiency() {
        let x = DenseMatrix::from_vec(3, 5, vec![1.0; 15]).unwrap();
        let s = svd(&x).unwrap();
        let utu = s.left.transpose().matmul(&s.left).unwrap();
        assert!(utu.sub(&DenseMatrix::identity(3)).max_abs() < 1e-12);
        let vtv = s.right.transpose().matmul(&s.right).unwrap();
        assert!(vtv.sub(&DenseMatrix::identity(3)).max_abs() < 1e-12);
    }
}
