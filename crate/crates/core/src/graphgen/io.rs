use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphgen::{BipartiteGraph, FrameGraph};

/// On-disk graph record:
/// `{"n":…, "m":…, "d1":…, "d2":…, "edges":[[l,r],…], "labels":[…]?}`.
///
/// Edges are written in lexicographic order. Extra top-level keys (for
/// example an embedded run config) are tolerated on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub m: usize,
    pub d1: usize,
    pub d2: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
}

impl From<&BipartiteGraph> for GraphFile {
    fn from(g: &BipartiteGraph) -> Self {
        Self {
            n: g.n(),
            m: g.m(),
            d1: g.d1(),
            d2: g.d2(),
            edges: g.edges().iter().map(|&(l, r)| [l, r]).collect(),
            labels: None,
        }
    }
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<BipartiteGraph> {
        BipartiteGraph::new(self.n, self.m, self.d1, self.d2, self.edges.iter().map(|e| (e[0], e[1])).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Frame-graph record: general (non-bipartite) edges `[u, v]` with `u < v`
/// over `n` vertices, plus class labels and the generating frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameGraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub labels: Vec<usize>,
    pub frame: crate::graphgen::Frame,
}

impl From<&FrameGraph> for FrameGraphFile {
    fn from(g: &FrameGraph) -> Self {
        Self {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
            labels: g.labels.clone(),
            frame: g.frame.clone(),
        }
    }
}

impl FrameGraphFile {
    pub fn to_frame_graph(&self) -> Result<FrameGraph> {
        if self.labels.len() != self.n {
            return Err(Error::DimensionMismatch("one label per vertex required".into()));
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for &[u, v] in &self.edges {
            if u >= self.n || v >= self.n || u == v {
                return Err(Error::InvalidParameters(format!("bad edge [{u}, {v}]")));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        self.frame.validate()?;
        Ok(FrameGraph { n: self.n, edges, labels: self.labels.clone(), frame: self.frame.clone() })
    }
}
