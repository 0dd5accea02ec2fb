use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphgen::BipartiteGraph;

/// Subgraph induced on the vertices within distance `ell` of a center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    /// Sorted vertex indices (unified index space).
    pub vertices: Vec<usize>,
    /// Every edge of the graph with both endpoints in the ball, as
    /// `(left, right)` pairs in the graph's own numbering.
    pub edges: Vec<(usize, usize)>,
}

impl Ball {
    /// Cycle-space dimension `|E| - |V| + 1` (a ball is connected).
    pub fn excess(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }
}

/// Radius-`ell` ball around `v`.
pub fn ball(g: &BipartiteGraph, v: usize, ell: usize) -> Result<Ball> {
    ball_with(g, &g.neighbors(), v, ell)
}

fn ball_with(g: &BipartiteGraph, adj: &[Vec<usize>], v: usize, ell: usize) -> Result<Ball> {
    if v >= g.num_vertices() {
        return Err(Error::InvalidVertex(v));
    }
    let mut dist = vec![usize::MAX; g.num_vertices()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    let mut vertices = vec![v];
    while let Some(u) = queue.pop_front() {
        if dist[u] == ell {
            continue;
        }
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                vertices.push(w);
                queue.push_back(w);
            }
        }
    }
    vertices.sort_unstable();
    let n = g.n();
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|&(l, r)| dist[l] != usize::MAX && dist[n + r] != usize::MAX)
        .collect();
    Ok(Ball { vertices, edges })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleReport {
    pub ell: usize,
    /// Largest cycle-space dimension over all radius-`ell` balls.
    pub worst_excess: i64,
    /// Center of a ball attaining `worst_excess` (lowest index).
    pub worst_vertex: usize,
    pub tangle_free: bool,
}

/// `ell`-tangle-free check: every radius-`ell` ball has at most one cycle.
pub fn tangle_free(g: &BipartiteGraph, ell: usize) -> TangleReport {
    let adj = g.neighbors();
    let mut worst_excess = i64::MIN;
    let mut worst_vertex = 0;
    for v in 0..g.num_vertices() {
        let b = ball_with(g, &adj, v, ell).expect("vertex in range");
        let x = b.excess();
        if x > worst_excess {
            worst_excess = x;
            worst_vertex = v;
        }
    }
    if g.num_vertices() == 0 {
        worst_excess = 0;
    }
    TangleReport { ell, worst_excess, worst_vertex, tangle_free: worst_excess <= 1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k23_balls() {
        let g = BipartiteGraph::complete(2, 3);
        let b = ball(&g, 0, 1).unwrap();
        assert_eq!(b.vertices, vec![0, 2, 3, 4]);
        assert_eq!(b.edges.len(), 3);
        let b0 = ball(&g, 3, 0).unwrap();
        assert_eq!(b0.vertices, vec![3]);
        assert!(b0.edges.is_empty());
        for v in 0..5 {
            let full = ball(&g, v, 2).unwrap();
            assert_eq!(full.vertices.len(), 5);
            assert_eq!(full.edges.len(), 6);
        }
    }

    #[test]
    fn k23_tangle() {
        let g = BipartiteGraph::complete(2, 3);
        let r1 = tangle_free(&g, 1);
        assert!(r1.tangle_free);
        let r2 = tangle_free(&g, 2);
        assert!(!r2.tangle_free);
        assert_eq!(r2.worst_excess, 2);
    }

    #[test]
    fn trees_are_tangle_free() {
        let star = BipartiteGraph::complete(1, 4);
        let path = BipartiteGraph::new(2, 3, 2, 1, vec![(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap();
        for g in [star, path] {
            for ell in 0..6 {
                assert!(tangle_free(&g, ell).tangle_free);
            }
        }
    }

    #[test]
    fn parallel_edges_form_a_cycle() {
        let g = BipartiteGraph::new(1, 1, 2, 2, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(tangle_free(&g, 1).worst_excess, 1);
    }

    #[test]
    fn invalid_center() {
        assert!(ball(&BipartiteGraph::complete(1, 1), 2, 1).is_err());
    }
}
