use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::DenseMatrix;

/// A bipartite (multi)graph with `n` left and `m` right vertices, nominally
/// `(d1, d2)`-biregular.
///
/// Vertices are addressed in a single index space: left vertex `i` is `i`,
/// right vertex `j` is `n + j`. Parallel edges are kept as repeated pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    m: usize,
    d1: usize,
    d2: usize,
    edges: Vec<(usize, usize)>,
    simple: bool,
}

impl BipartiteGraph {
    /// Build from an edge list of `(left, right)` pairs. Edges are sorted
    /// lexicographically; degrees are not enforced here (see [`validate`]).
    pub fn new(n: usize, m: usize, d1: usize, d2: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(l, r) in &edges {
            if l >= n {
                return Err(Error::InvalidVertex(l));
            }
            if r >= m {
                return Err(Error::InvalidVertex(n + r));
            }
        }
        edges.sort_unstable();
        let simple = edges.windows(2).all(|w| w[0] != w[1]);
        Ok(Self { n, m, d1, d2, edges, simple })
    }

    /// The complete bipartite graph `K_{n,m}`.
    pub fn complete(n: usize, m: usize) -> Self {
        let edges = (0..n).flat_map(|l| (0..m).map(move |r| (l, r))).collect();
        Self::new(n, m, m, n, edges).expect("indices in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.n + self.m
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// Swap the roles of the two sides.
    pub fn transpose(&self) -> Self {
        let edges = self.edges.iter().map(|&(l, r)| (r, l)).collect();
        Self::new(self.m, self.n, self.d2, self.d1, edges).expect("indices in range")
    }

    /// `n x m` biadjacency matrix; entries count edge multiplicity.
    pub fn biadjacency(&self) -> DenseMatrix {
        let mut x = DenseMatrix::zeros(self.n, self.m);
        for &(l, r) in &self.edges {
            x[(l, r)] += 1.0;
        }
        x
    }

    /// Full `(n+m) x (n+m)` adjacency matrix in block form `[[0, X], [X^T, 0]]`.
    pub fn adjacency(&self) -> DenseMatrix {
        let size = self.num_vertices();
        let mut a = DenseMatrix::zeros(size, size);
        for &(l, r) in &self.edges {
            a[(l, self.n + r)] += 1.0;
            a[(self.n + r, l)] += 1.0;
        }
        a
    }

    /// Adjacency lists in the unified vertex index space, with repeats for
    /// parallel edges.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for &(l, r) in &self.edges {
            adj[l].push(self.n + r);
            adj[self.n + r].push(l);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices()];
        for &(l, r) in &self.edges {
            deg[l] += 1;
            deg[self.n + r] += 1;
        }
        deg
    }

    pub fn require_simple(&self) -> Result<()> {
        if self.simple {
            Ok(())
        } else {
            Err(Error::Multigraph)
        }
    }
}

/// One vertex whose degree differs from the nominal one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeViolation {
    pub vertex: usize,
    pub expected: usize,
    pub found: usize,
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub passed: bool,
    pub count_mismatch: Option<String>,
    pub degree_violations: Vec<DegreeViolation>,
    /// Repeated pairs with their multiplicity. Allowed in multigraphs, so
    /// they do not fail validation by themselves.
    pub duplicates: Vec<((usize, usize), usize)>,
}

/// Check the biregular invariants: `n*d1 = m*d2 = |E|` and exact degree counts.
pub fn validate(g: &BipartiteGraph) -> Diagnostics {
    let e = g.num_edges();
    let count_mismatch = if g.n * g.d1 != g.m * g.d2 || g.n * g.d1 != e {
        Some(format!("n*d1 = {}, m*d2 = {}, |E| = {e}", g.n * g.d1, g.m * g.d2))
    } else {
        None
    };
    let degree_violations: Vec<_> = g
        .degrees()
        .into_iter()
        .enumerate()
        .filter_map(|(v, found)| {
            let expected = if v < g.n { g.d1 } else { g.d2 };
            (found != expected).then_some(DegreeViolation { vertex: v, expected, found })
        })
        .collect();
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &edge in &g.edges {
        *mult.entry(edge).or_default() += 1;
    }
    let duplicates: Vec<_> = mult.into_iter().filter(|&(_, c)| c > 1).collect();
    let passed = count_mismatch.is_none() && degree_violations.is_empty();
    Diagnostics { passed, count_mismatch, degree_violations, duplicates }
}
