use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graphgen::BipartiteGraph;
use crate::numkernel::svd;

/// Relative factor in the rank tolerance `1e-8 * s_1 * max(n, m)`.
pub const RANK_TOL_FACTOR: f64 = 1e-8;

/// Adjacency spectrum of a bipartite graph, assembled from the singular
/// values of its biadjacency matrix `X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealSpectrum {
    /// Eigenvalues of `A`, descending, `n + m` of them.
    pub values: Vec<f64>,
    /// Singular values of `X`, descending, `min(n, m)` of them.
    pub singulars: Vec<f64>,
    /// Numerical rank of `X`.
    pub rank_r: usize,
    /// Second largest eigenvalue of `A`.
    pub eta: f64,
    /// Smallest strictly positive eigenvalue, if any.
    pub eta_min_plus: Option<f64>,
    pub n: usize,
    pub m: usize,
}

impl RealSpectrum {
    pub fn leading(&self) -> f64 {
        self.values[0]
    }

    /// Positive eigenvalues (the nonzero singular values), descending.
    pub fn positive(&self) -> &[f64] {
        &self.singulars[..self.rank_r]
    }
}

/// Spectrum of `A = [[0, X], [X^T, 0]]`: `+s_i`, `-s_i` for each nonzero
/// singular value of `X`, and zeros for the rest.
pub fn adjacency_spectrum(g: &BipartiteGraph) -> Result<RealSpectrum> {
    g.require_simple()?;
    from_biadjacency(g)
}

pub(crate) fn from_biadjacency(g: &BipartiteGraph) -> Result<RealSpectrum> {
    let (n, m) = (g.n(), g.m());
    let sv = svd(&g.biadjacency())?;
    let s1 = sv.values.first().copied().unwrap_or(0.0);
    let tol = RANK_TOL_FACTOR * s1 * n.max(m) as f64;
    let rank_r = sv.values.iter().filter(|&&s| s > tol).count();
    let positive = &sv.values[..rank_r];

    let mut values = Vec::with_capacity(n + m);
    values.extend_from_slice(positive);
    values.extend(std::iter::repeat_n(0.0, n + m - 2 * rank_r));
    values.extend(positive.iter().rev().map(|s| -s));

    Ok(RealSpectrum {
        eta: values.get(1).copied().unwrap_or(f64::NAN),
        eta_min_plus: positive.last().copied(),
        values,
        singulars: sv.values,
        rank_r,
        n,
        m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::sample_simple;
    use crate::numkernel::{sym_eig, RngStream};

    #[test]
    fn k23_spectrum() {
        let s = adjacency_spectrum(&BipartiteGraph::complete(2, 3)).unwrap();
        let r6 = 6f64.sqrt();
        assert_eq!(s.rank_r, 1);
        assert!((s.values[0] - r6).abs() < 1e-14);
        assert_eq!(&s.values[1..4], &[0.0, 0.0, 0.0]);
        assert!((s.values[4] + r6).abs() < 1e-14);
        assert_eq!(s.eta, 0.0);
        assert_eq!(s.singulars[1], 0.0);
    }

    #[test]
    fn single_edge() {
        let g = BipartiteGraph::complete(1, 1);
        let s = adjacency_spectrum(&g).unwrap();
        assert_eq!(s.values, vec![1.0, -1.0]);
        assert_eq!(s.eta, -1.0);
        assert_eq!(s.eta_min_plus, Some(1.0));
    }

    #[test]
    fn multigraph_rejected() {
        let g = BipartiteGraph::new(1, 1, 2, 2, vec![(0, 0), (0, 0)]).unwrap();
        assert!(adjacency_spectrum(&g).is_err());
    }

    #[test]
    fn perron_value_and_symmetric_eigensolver_agree() {
        let g = sample_simple(12, 18, 3, 2, &mut RngStream::new(4), 100_000).unwrap().graph;
        let s = adjacency_spectrum(&g).unwrap();
        assert!((s.leading() - 6f64.sqrt()).abs() < 1e-9);
        let direct = sym_eig(&g.adjacency()).unwrap();
        for (a, b) in s.values.iter().zip(&direct.values) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
        // exact symmetry of the assembled multiset
        let k = s.values.len();
        for i in 0..k {
            assert_eq!(s.values[i], -s.values[k - 1 - i]);
        }
    }

    #[test]
    fn sampled_perron_eigenvalue() {
        let g = sample_simple(120, 280, 7, 3, &mut RngStream::new(42), 10_000_000).unwrap().graph;
        let s = adjacency_spectrum(&g).unwrap();
        assert!((s.leading() - 21f64.sqrt()).abs() < 1e-9);
        assert_eq!(s.values.len(), 400);
    }
}
