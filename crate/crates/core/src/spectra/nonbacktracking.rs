use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graphgen::BipartiteGraph;
use crate::numkernel::{ComplexMatrix, DenseMatrix};
use num_complex::Complex64;

/// Sparse non-backtracking operator on the `2|E|` oriented edges of a
/// bipartite graph.
///
/// Oriented edge `k < |E|` is the `k`-th edge (lexicographic `(left, right)`
/// order) directed from its left to its right endpoint; `k + |E|` is its
/// reversal. `B[e][f] = 1` when `f` leaves the head of `e` without returning
/// along `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonBacktrackingOperator {
    num_edges: usize,
    /// `(tail, head)` in the unified vertex index.
    oriented: Vec<(usize, usize)>,
    /// Column indices of the nonzeros of each row, ascending.
    rows: Vec<Vec<usize>>,
}

impl NonBacktrackingOperator {
    pub fn size(&self) -> usize {
        self.oriented.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn oriented_edge(&self, k: usize) -> (usize, usize) {
        self.oriented[k]
    }

    pub fn successors(&self, e: usize) -> &[usize] {
        &self.rows[e]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|row| row.iter().map(|&f| x[f]).sum()).collect()
    }

    pub fn matvec_transpose(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.size()];
        for (e, row) in self.rows.iter().enumerate() {
            for &f in row {
                y[f] += x[e];
            }
        }
        y
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let k = self.size();
        let mut b = DenseMatrix::zeros(k, k);
        for (e, row) in self.rows.iter().enumerate() {
            for &f in row {
                b[(e, f)] = 1.0;
            }
        }
        b
    }

    /// Dense `B - lambda I`.
    pub fn shifted(&self, lambda: Complex64) -> ComplexMatrix {
        let k = self.size();
        let mut data = vec![Complex64::new(0.0, 0.0); k * k];
        for (e, row) in self.rows.iter().enumerate() {
            for &f in row {
                data[e * k + f] = Complex64::new(1.0, 0.0);
            }
            data[e * k + e] -= lambda;
        }
        ComplexMatrix::from_vec(k, k, data).expect("square")
    }
}

/// Build the non-backtracking operator of a simple bipartite graph.
pub fn build_b(g: &BipartiteGraph) -> Result<NonBacktrackingOperator> {
    g.require_simple()?;
    let n = g.n();
    let num_edges = g.num_edges();
    let mut oriented = Vec::with_capacity(2 * num_edges);
    oriented.extend(g.edges().iter().map(|&(l, r)| (l, n + r)));
    oriented.extend(g.edges().iter().map(|&(l, r)| (n + r, l)));

    let mut outgoing = vec![Vec::new(); g.num_vertices()];
    for (k, &(tail, _)) in oriented.iter().enumerate() {
        outgoing[tail].push(k);
    }
    let rows = oriented
        .iter()
        .map(|&(tail, head)| {
            let mut row: Vec<usize> = outgoing[head].iter().copied().filter(|&f| oriented[f].1 != tail).collect();
            row.sort_unstable();
            row
        })
        .collect();
    Ok(NonBacktrackingOperator { num_edges, oriented, rows })
}

/// Residuals of the Perron eigenpair `lambda = sqrt((d1-1)(d2-1))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerronCheck {
    pub lambda: f64,
    pub alpha: f64,
    /// `max |B 1_alpha - lambda 1_alpha|`.
    pub right: f64,
    /// `max |B^T w - lambda w|` for the left vector `w = (1, 1/alpha)`.
    pub left: f64,
}

impl PerronCheck {
    pub fn max_residual(&self) -> f64 {
        self.right.max(self.left)
    }
}

/// Check `B 1_alpha = lambda 1_alpha` with `1_alpha = (1, ..., 1, alpha, ..., alpha)`
/// and `alpha = sqrt(d1-1) / sqrt(d2-1)`, together with the matching left
/// eigenvector `(1, 1/alpha)`.
///
/// The vector `1_alpha` is a left eigenvector only when `d1 = d2`; in
/// general `B^T` carries `alpha` on the other block. Both vectors are
/// rescaled so that degree-one sides (`d1 = 1` or `d2 = 1`) stay finite.
pub fn perron_check(b: &NonBacktrackingOperator, d1: usize, d2: usize) -> PerronCheck {
    let (a, c) = (((d1.max(1) - 1) as f64).sqrt(), ((d2.max(1) - 1) as f64).sqrt());
    let lambda = a * c;
    let e = b.num_edges();
    let residual = |x: &[f64], y: &[f64]| -> f64 {
        x.iter().zip(y).map(|(xi, yi)| (yi - lambda * xi).abs()).fold(0.0, f64::max)
    };
    let block = |first: f64, second: f64| -> Vec<f64> {
        let mut v = vec![first; 2 * e];
        v[e..].iter_mut().for_each(|x| *x = second);
        v
    };
    let (r, l) = if a > 0.0 && c > 0.0 { (block(1.0, a / c), block(1.0, c / a)) } else { (block(c, a), block(a, c)) };
    let right = residual(&r, &b.matvec(&r));
    let left = residual(&l, &b.matvec_transpose(&l));
    PerronCheck { lambda, alpha: if c > 0.0 { a / c } else { f64::INFINITY }, right, left }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::sample_simple;
    use crate::numkernel::RngStream;

    #[test]
    fn single_edge_is_zero() {
        let b = build_b(&BipartiteGraph::complete(1, 1)).unwrap();
        assert_eq!(b.size(), 2);
        assert_eq!(b.nnz(), 0);
    }

    #[test]
    fn path_on_three_vertices() {
        let g = BipartiteGraph::complete(1, 2);
        let b = build_b(&g).unwrap();
        assert_eq!(b.size(), 4);
        assert_eq!(b.nnz(), 2);
        // 0 -> r0 cannot continue; r0 -> 0 continues along 0 -> r1
        assert_eq!(b.successors(2), &[1]);
        assert_eq!(b.successors(3), &[0]);
    }

    #[test]
    fn k23_row_sums() {
        let g = BipartiteGraph::complete(2, 3);
        let b = build_b(&g).unwrap();
        let deg = g.degrees();
        for e in 0..b.size() {
            let (_, head) = b.oriented_edge(e);
            assert_eq!(b.successors(e).len(), deg[head] - 1);
            let want = if e < 6 { 1 } else { 2 };
            assert_eq!(b.successors(e).len(), want);
        }
    }

    #[test]
    fn definition_holds_entrywise() {
        let g = sample_simple(6, 9, 3, 2, &mut RngStream::new(5), 100_000).unwrap().graph;
        let b = build_b(&g).unwrap();
        let dense = b.to_dense();
        for e in 0..b.size() {
            for f in 0..b.size() {
                let ((u, v), (s, t)) = (b.oriented_edge(e), b.oriented_edge(f));
                let want = if v == s && u != t { 1.0 } else { 0.0 };
                assert_eq!(dense[(e, f)], want);
            }
        }
    }

    #[test]
    fn perron_on_k23_is_exact() {
        let b = build_b(&BipartiteGraph::complete(2, 3)).unwrap();
        let p = perron_check(&b, 3, 2);
        assert!(p.right < 1e-15);
        assert!(p.left < 1e-15);
        assert!((p.lambda - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn alpha_vector_is_not_a_left_eigenvector_when_degrees_differ() {
        let b = build_b(&BipartiteGraph::complete(2, 3)).unwrap();
        let alpha = 2f64.sqrt();
        let mut v = vec![1.0; 12];
        v[6..].iter_mut().for_each(|x| *x = alpha);
        let bt = b.matvec_transpose(&v);
        // first block: (d1 - 1) alpha = 2 sqrt 2, not lambda = sqrt 2
        assert!((bt[0] - 2.0 * alpha).abs() < 1e-15);
    }

    #[test]
    fn perron_with_a_degree_one_side() {
        let g = BipartiteGraph::complete(1, 3);
        let b = build_b(&g).unwrap();
        let p = perron_check(&b, 3, 1);
        assert_eq!(p.lambda, 0.0);
        assert_eq!(p.max_residual(), 0.0);
    }

    #[test]
    fn perron_on_samples() {
        let mut rng = RngStream::new(9);
        for &(n, m, d1, d2) in &[(12, 18, 3, 2), (20, 20, 4, 4), (15, 45, 6, 2)] {
            let g = sample_simple(n, m, d1, d2, &mut rng, 1_000_000).unwrap().graph;
            let p = perron_check(&build_b(&g).unwrap(), d1, d2);
            assert!(p.max_residual() <= 1e-12, "{p:?}");
        }
    }
}
