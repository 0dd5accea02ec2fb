use crate::codes::f2::{min_weight_in_span, BitMatrix, BitVec};
use crate::codes::ComponentCode;
use crate::error::{Error, Result};
use crate::graphgen::BipartiteGraph;

/// Default cap on the code dimension for exhaustive distance computation.
pub const DEFAULT_MAX_DIM: usize = 20;

/// Tanner code of a biregular graph: words on the edges whose restriction
/// to every left vertex lies in `c1` and to every right vertex in `c2`.
///
/// The local coordinates at a vertex are its incident edges in ascending
/// global edge index (the lexicographic edge order of the graph).
#[derive(Debug, Clone, PartialEq)]
pub struct TannerCode {
    graph: BipartiteGraph,
    c1: ComponentCode,
    c2: ComponentCode,
    /// Incident edge indices per vertex (unified index), ascending.
    local: Vec<Vec<usize>>,
}

impl TannerCode {
    pub fn new(graph: BipartiteGraph, c1: ComponentCode, c2: ComponentCode) -> Result<Self> {
        let mut local = vec![Vec::new(); graph.num_vertices()];
        for (k, &(l, r)) in graph.edges().iter().enumerate() {
            local[l].push(k);
            local[graph.n() + r].push(k);
        }
        let n = graph.n();
        for (v, edges) in local.iter().enumerate() {
            let want = if v < n { c1.length } else { c2.length };
            if edges.len() != want {
                return Err(Error::DimensionMismatch(format!(
                    "vertex {v} has degree {} but its component code has length {want}",
                    edges.len()
                )));
            }
        }
        Ok(Self { graph, c1, c2, local })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn c1(&self) -> &ComponentCode {
        &self.c1
    }

    pub fn c2(&self) -> &ComponentCode {
        &self.c2
    }

    /// Codeword length `|E|`.
    pub fn length(&self) -> usize {
        self.graph.num_edges()
    }

    /// Global parity-check matrix: every local check lifted to edge coordinates.
    pub fn parity_check(&self) -> BitMatrix {
        let len = self.length();
        let mut h = BitMatrix::new(len);
        for (v, edges) in self.local.iter().enumerate() {
            let code = if v < self.graph.n() { &self.c1 } else { &self.c2 };
            for row in &code.parity_check {
                let mut lifted = BitVec::zeros(len);
                for (pos, &bit) in row.iter().enumerate() {
                    if bit != 0 {
                        lifted.set(edges[pos], true);
                    }
                }
                h.push_row(lifted);
            }
        }
        h
    }

    pub fn dimension(&self) -> usize {
        self.length() - self.parity_check().rank()
    }

    pub fn basis(&self) -> Vec<BitVec> {
        self.parity_check().nullspace()
    }

    pub fn contains(&self, x: &BitVec) -> Result<bool> {
        tanner_membership(self, x)
    }
}

/// Whether every local restriction of `x` is a component codeword.
pub fn tanner_membership(code: &TannerCode, x: &BitVec) -> Result<bool> {
    if x.len() != code.length() {
        return Err(Error::DimensionMismatch(format!("word of length {} for a code of length {}", x.len(), code.length())));
    }
    let n = code.graph.n();
    Ok(code.local.iter().enumerate().all(|(v, edges)| {
        let c = if v < n { &code.c1 } else { &code.c2 };
        let mut word = BitVec::zeros(edges.len());
        for (pos, &e) in edges.iter().enumerate() {
            word.set(pos, x.get(e));
        }
        c.contains(&word)
    }))
}

/// Exact minimum distance by enumerating the whole code. `None` when the
/// code is `{0}`.
pub fn min_distance_bruteforce(code: &TannerCode, max_dim: usize) -> Result<Option<usize>> {
    min_weight_in_span(&code.basis(), max_dim)
}
