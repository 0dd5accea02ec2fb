use serde::{Deserialize, Serialize};

use crate::completion::{trace_norm, CompletionInstance};
use crate::error::{Error, Result};
use crate::numkernel::{svd, svd_warm, DenseMatrix, Svd};

const INNER_MAX: usize = 200;
const INNER_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub max_iter: usize,
    /// Stop once the observed-entry residual RMS (noiseless) or its excess
    /// over `delta` (noisy) falls below this.
    pub tol: f64,
    /// Threshold schedule `mu_k = mu_0 * decay^k`.
    pub decay: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { max_iter: 5000, tol: 1e-6, decay: 0.97 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    pub x: DenseMatrix,
    pub iterations: usize,
    /// RMS of `X - Z` over the mask.
    pub residual_rms: f64,
    pub converged: bool,
    pub final_mu: f64,
    pub trace_norm: f64,
}

/// Report-only variant of [`solve_trace_norm`]: never fails on
/// non-convergence, the flag says what happened.
pub fn solve_trace_norm_with(inst: &CompletionInstance, opts: SolverOptions) -> Result<Completion> {
    if opts.decay.is_nan() || opts.decay <= 0.0 || opts.decay >= 1.0 || opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidParameters("decay must lie in (0, 1) and tol be positive".into()));
    }
    let edges = inst.mask.edges();
    let z = inst.observed();
    let count = edges.len() as f64;
    let rms = |x: &DenseMatrix| -> f64 {
        (edges.iter().zip(&z).map(|(&(i, j), zij)| (x[(i, j)] - zij).powi(2)).sum::<f64>() / count).sqrt()
    };
    let gap = |x: &DenseMatrix| (rms(x) - inst.delta).max(0.0);

    if inst.is_fully_observed() && inst.delta == 0.0 {
        let x = inst.zero_filled();
        let tn = trace_norm(&x)?;
        return Ok(Completion { x, iterations: 0, residual_rms: 0.0, converged: true, final_mu: 0.0, trace_norm: tn });
    }

    let mu0 = svd(&inst.zero_filled())?.values.first().copied().unwrap_or(0.0);
    let mut x = DenseMatrix::zeros(inst.y.rows(), inst.y.cols());
    let mut mu = mu0;
    let mut factors: Option<Svd> = None;
    for k in 0..opts.max_iter {
        for _ in 0..INNER_MAX {
            let mut y = x.clone();
            project(&mut y, inst, &z);
            let sv = match &factors {
                Some(prev) => svd_warm(&y, prev)?,
                None => svd(&y)?,
            };
            let next = soft_threshold(&sv, mu);
            factors = Some(sv);
            let change = frobenius_diff(&next, &x);
            let scale = frobenius_diff(&next, &DenseMatrix::zeros(next.rows(), next.cols())).max(1.0);
            x = next;
            if change <= INNER_TOL * scale {
                break;
            }
        }
        if gap(&x) < opts.tol {
            let tn = trace_norm(&x)?;
            return Ok(Completion { residual_rms: rms(&x), x, iterations: k + 1, converged: true, final_mu: mu, trace_norm: tn });
        }
        mu *= opts.decay;
    }
    let tn = trace_norm(&x)?;
    Ok(Completion { residual_rms: rms(&x), x, iterations: opts.max_iter, converged: false, final_mu: mu, trace_norm: tn })
}

/// Minimize the trace norm subject to the observations, by singular-value
/// soft-thresholding with a geometrically decreasing threshold, alternated
/// with projection onto the constraint set.
pub fn solve_trace_norm(inst: &CompletionInstance) -> Result<Completion> {
    let opts = SolverOptions::default();
    let c = solve_trace_norm_with(inst, opts)?;
    if c.converged {
        Ok(c)
    } else {
        Err(Error::NoConvergence { method: "trace-norm soft-thresholding", iterations: opts.max_iter })
    }
}

/// Replace the observed entries by the nearest point of the constraint set:
/// exact values when `delta = 0`, else the RMS ball of radius `delta` around `Z`.
fn project(x: &mut DenseMatrix, inst: &CompletionInstance, z: &[f64]) {
    let edges = inst.mask.edges();
    if inst.delta == 0.0 {
        for (&(i, j), &zij) in edges.iter().zip(z) {
            x[(i, j)] = zij;
        }
        return;
    }
    let norm = (edges.iter().zip(z).map(|(&(i, j), zij)| (x[(i, j)] - zij).powi(2)).sum::<f64>() / edges.len() as f64).sqrt();
    if norm <= inst.delta {
        return;
    }
    let s = inst.delta / norm;
    for (&(i, j), &zij) in edges.iter().zip(z) {
        x[(i, j)] = zij + s * (x[(i, j)] - zij);
    }
}

fn frobenius_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn soft_threshold(sv: &Svd, mu: f64) -> DenseMatrix {
    let kept: Vec<(usize, f64)> =
        sv.values.iter().enumerate().filter_map(|(l, &s)| (s > mu).then_some((l, s - mu))).collect();
    DenseMatrix::from_fn(sv.left.rows(), sv.right.rows(), |i, j| {
        kept.iter().map(|&(l, s)| sv.left[(i, l)] * s * sv.right[(j, l)]).sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::random_sign_rank_one;
    use crate::graphgen::{sample_simple, BipartiteGraph};
    use crate::numkernel::RngStream;

    #[test]
    fn fully_observed_is_exact() {
        let mut rng = RngStream::new(1);
        let y = random_sign_rank_one(3, 4, &mut rng);
        let inst = CompletionInstance::new(y.clone(), BipartiteGraph::complete(3, 4)).unwrap();
        let c = solve_trace_norm(&inst).unwrap();
        assert_eq!(c.x, y);
        assert_eq!(c.iterations, 0);
    }

    #[test]
    fn rank_one_completion() {
        let mut rng = RngStream::new(21);
        let mask = sample_simple(40, 60, 6, 4, &mut rng, 10_000_000).unwrap().graph;
        let y = random_sign_rank_one(40, 60, &mut rng);
        let inst = CompletionInstance::new(y.clone(), mask).unwrap();
        let c = solve_trace_norm(&inst).unwrap();
        assert!(c.residual_rms <= 1e-6);
        assert!(c.trace_norm <= trace_norm(&y).unwrap() + 1e-4, "{} vs {}", c.trace_norm, trace_norm(&y).unwrap());
    }

    #[test]
    fn zero_budget_matches_noiseless() {
        let mut rng = RngStream::new(5);
        let mask = sample_simple(8, 12, 3, 2, &mut rng, 100_000).unwrap().graph;
        let y = random_sign_rank_one(8, 12, &mut rng);
        let clean = CompletionInstance::new(y, mask).unwrap();
        let noisy = clean.clone().with_noise(clean.observed(), 0.0).unwrap();
        assert_eq!(solve_trace_norm(&clean).unwrap().x, solve_trace_norm(&noisy).unwrap().x);
    }

    #[test]
    fn non_convergence_is_reported() {
        let mut rng = RngStream::new(6);
        let mask = sample_simple(8, 12, 3, 2, &mut rng, 100_000).unwrap().graph;
        let inst = CompletionInstance::new(random_sign_rank_one(8, 12, &mut rng), mask).unwrap();
        let c = solve_trace_norm_with(&inst, SolverOptions { max_iter: 3, ..Default::default() }).unwrap();
        assert!(!c.converged);
        assert_eq!(c.iterations, 3);
    }
}
