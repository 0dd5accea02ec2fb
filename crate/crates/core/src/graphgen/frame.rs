//! Frame model: a small weighted directed graph prescribing class sizes and
//! inter-class degrees of a large random graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphgen::sample_simple;
use crate::numkernel::{DenseMatrix, RngStream};

const BALANCE_TOL: f64 = 1e-9;

/// Frame `H = (V, E, p, D)`: class proportions `p` and degree matrix `D`,
/// where `D[i][j]` is the number of neighbours in class `j` of each vertex in
/// class `i`. Edges of the frame are the nonzero entries of `D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub names: Vec<String>,
    pub p: Vec<f64>,
    pub degrees: Vec<Vec<usize>>,
}

impl Frame {
    pub fn new(names: Vec<String>, p: Vec<f64>, degrees: Vec<Vec<usize>>) -> Result<Self> {
        let f = Self { names, p, degrees };
        f.validate()?;
        Ok(f)
    }

    /// Two classes wired as `G(n, m, d1, d2)`.
    pub fn bipartite(n: usize, m: usize, d1: usize, d2: usize) -> Result<Self> {
        let total = (n + m) as f64;
        Self::new(
            vec!["V1".into(), "V2".into()],
            vec![n as f64 / total, m as f64 / total],
            vec![vec![0, d1], vec![d2, 0]],
        )
    }

    /// Regular stochastic block model: two equal classes, within-class
    /// degree `d_in`, between-class degree `d_out`.
    pub fn regular_sbm(d_in: usize, d_out: usize) -> Result<Self> {
        Self::new(
            vec!["A".into(), "B".into()],
            vec![0.5, 0.5],
            vec![vec![d_in, d_out], vec![d_out, d_in]],
        )
    }

    pub fn num_classes(&self) -> usize {
        self.p.len()
    }

    pub fn degree_matrix(&self) -> DenseMatrix {
        let k = self.num_classes();
        DenseMatrix::from_fn(k, k, |i, j| self.degrees[i][j] as f64)
    }

    /// Total degree of a vertex in class `i`.
    pub fn row_degree(&self, i: usize) -> usize {
        self.degrees[i].iter().sum()
    }

    /// Check shape, `sum p = 1`, and the balance `p_i D_ij = p_j D_ji`.
    pub fn validate(&self) -> Result<()> {
        let k = self.p.len();
        if k == 0 {
            return Err(Error::InvalidParameters("frame has no classes".into()));
        }
        if self.names.len() != k || self.degrees.len() != k || self.degrees.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch(format!("frame with {k} classes has mismatched names/degrees")));
        }
        if self.p.iter().any(|&x| !x.is_finite() || x <= 0.0) {
            return Err(Error::InvalidParameters("class proportions must be positive".into()));
        }
        let total: f64 = self.p.iter().sum();
        if (total - 1.0).abs() > BALANCE_TOL {
            return Err(Error::InvalidParameters(format!("proportions sum to {total}, not 1")));
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let a = self.p[i] * self.degrees[i][j] as f64;
                let b = self.p[j] * self.degrees[j][i] as f64;
                if (a - b).abs() > BALANCE_TOL * a.max(b).max(1.0) {
                    return Err(Error::Unbalanced { i, j });
                }
            }
        }
        Ok(())
    }

    /// Class sizes `n_i = n_total * p_i`, which must be integers.
    pub fn class_sizes(&self, n_total: usize) -> Result<Vec<usize>> {
        self.p
            .iter()
            .enumerate()
            .map(|(class, &p)| {
                let size = n_total as f64 * p;
                let rounded = size.round();
                if (size - rounded).abs() > 1e-9 * size.max(1.0) {
                    Err(Error::NonIntegralClass { class, size })
                } else {
                    Ok(rounded as usize)
                }
            })
            .collect()
    }
}

/// A sample from the frame model. Vertices are numbered class by class.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameGraph {
    pub n: usize,
    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<usize>,
    pub frame: Frame,
}

impl FrameGraph {
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn adjacency(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] += 1.0;
            a[(v, u)] += 1.0;
        }
        a
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// `(vertex, class)` counts: `counts[v][j]` = neighbours of `v` in class `j`.
    pub fn class_degree_counts(&self) -> Vec<Vec<usize>> {
        let k = self.frame.num_classes();
        let mut counts = vec![vec![0; k]; self.n];
        for &(u, v) in &self.edges {
            counts[u][self.labels[v]] += 1;
            counts[v][self.labels[u]] += 1;
        }
        counts
    }
}

/// Sample `G(n_total, H)`: diagonal blocks are simple `D_ii`-regular graphs on
/// the class, off-diagonal blocks are simple `G(n_i, n_j, D_ij, D_ji)` graphs.
pub fn sample_frame_graph(n_total: usize, frame: &Frame, rng: &mut RngStream, max_attempts: usize) -> Result<FrameGraph> {
    frame.validate()?;
    let sizes = frame.class_sizes(n_total)?;
    let k = frame.num_classes();
    let mut offsets = vec![0; k + 1];
    for i in 0..k {
        offsets[i + 1] = offsets[i] + sizes[i];
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i..k {
            let dij = frame.degrees[i][j];
            if dij == 0 {
                continue;
            }
            if i == j {
                for (u, v) in sample_regular(sizes[i], dij, rng, max_attempts)? {
                    edges.push((offsets[i] + u, offsets[i] + v));
                }
            } else {
                let block = sample_simple(sizes[i], sizes[j], dij, frame.degrees[j][i], rng, max_attempts)?;
                for &(u, v) in block.graph.edges() {
                    edges.push((offsets[i] + u, offsets[j] + v));
                }
            }
        }
    }
    edges.sort_unstable();
    let labels = (0..k).flat_map(|i| std::iter::repeat_n(i, sizes[i])).collect();
    Ok(FrameGraph { n: offsets[k], edges, labels, frame: frame.clone() })
}

/// Simple `d`-regular graph on `n` vertices by sequential random pairing of
/// half-edges: each step joins a uniformly random suitable pair (distinct,
/// not yet adjacent), restarting if no suitable pair is left.
///
/// Unlike whole-matching rejection this stays practical for dense blocks,
/// where a configuration sample is almost never simple.
pub fn sample_regular(n: usize, d: usize, rng: &mut RngStream, max_restarts: usize) -> Result<Vec<(usize, usize)>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    if d >= n || (n * d) % 2 == 1 {
        return Err(Error::InvalidParameters(format!("no simple {d}-regular graph on {n} vertices")));
    }
    if max_restarts == 0 {
        return Err(Error::InvalidParameters("max_attempts must be at least 1".into()));
    }
    const QUICK_TRIES: usize = 64;
    let words = n.div_ceil(64);
    'restart: for _ in 0..max_restarts {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut adj = vec![0u64; n * words];
        let is_adj = |adj: &[u64], u: usize, v: usize| adj[u * words + v / 64] >> (v % 64) & 1 == 1;
        let mut edges = Vec::with_capacity(n * d / 2);
        while !points.is_empty() {
            let len = points.len();
            let mut chosen = None;
            for _ in 0..QUICK_TRIES {
                let (i, j) = (rng.index(len), rng.index(len));
                let (u, v) = (points[i], points[j]);
                if u != v && !is_adj(&adj, u, v) {
                    chosen = Some((i, j));
                    break;
                }
            }
            if chosen.is_none() {
                let suitable: Vec<(usize, usize)> = (0..len)
                    .flat_map(|i| (0..len).map(move |j| (i, j)))
                    .filter(|&(i, j)| points[i] != points[j] && !is_adj(&adj, points[i], points[j]))
                    .collect();
                if suitable.is_empty() {
                    continue 'restart;
                }
                chosen = Some(suitable[rng.index(suitable.len())]);
            }
            let (i, j) = chosen.expect("pair chosen");
            let (u, v) = (points[i], points[j]);
            adj[u * words + v / 64] |= 1 << (v % 64);
            adj[v * words + u / 64] |= 1 << (u % 64);
            edges.push((u.min(v), u.max(v)));
            let (hi, lo) = (i.max(j), i.min(j));
            points.swap_remove(hi);
            points.swap_remove(lo);
        }
        edges.sort_unstable();
        return Ok(edges);
    }
    Err(Error::SimplicityBudgetExhausted(max_restarts))
}
