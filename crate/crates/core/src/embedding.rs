//! Graph specifications and embeddings onto polygon vertices.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Path,
    Cycle,
    Clique,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::Clique => "clique",
        })
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "path" => Ok(GraphKind::Path),
            "cycle" => Ok(GraphKind::Cycle),
            "clique" => Ok(GraphKind::Clique),
            other => Err(format!("unknown graph kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphSpecError {
    #[error("a path needs at least one edge")]
    EmptyPath,
    #[error("a cycle needs at least three edges, got {0}")]
    DegenerateCycle(usize),
    #[error("a clique needs at least two nodes, got {0}")]
    TinyClique(usize),
}

/// The abstract graph to embed.
///
/// `size` counts edges for paths and cycles and nodes for cliques, so a
/// path of size `m` has `m + 1` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub size: usize,
}

impl GraphSpec {
    pub fn new(kind: GraphKind, size: usize) -> Result<Self, GraphSpecError> {
        match kind {
            GraphKind::Path if size < 1 => Err(GraphSpecError::EmptyPath),
            GraphKind::Cycle if size < 3 => Err(GraphSpecError::DegenerateCycle(size)),
            GraphKind::Clique if size < 2 => Err(GraphSpecError::TinyClique(size)),
            _ => Ok(GraphSpec { kind, size }),
        }
    }

    pub fn path(edges: usize) -> Self {
        GraphSpec {
            kind: GraphKind::Path,
            size: edges,
        }
    }

    pub fn cycle(edges: usize) -> Self {
        GraphSpec {
            kind: GraphKind::Cycle,
            size: edges,
        }
    }

    pub fn clique(nodes: usize) -> Self {
        GraphSpec {
            kind: GraphKind::Clique,
            size: nodes,
        }
    }

    pub fn node_count(&self) -> usize {
        match self.kind {
            GraphKind::Path => self.size + 1,
            GraphKind::Cycle | GraphKind::Clique => self.size,
        }
    }

    pub fn edge_count(&self) -> usize {
        match self.kind {
            GraphKind::Path | GraphKind::Cycle => self.size,
            GraphKind::Clique => self.size * self.size.saturating_sub(1) / 2,
        }
    }

    /// Canonical node-index edge list: `0-1-2-...` for paths, closed for
    /// cycles, all pairs for cliques.
    pub fn node_edges(&self) -> Vec<(usize, usize)> {
        let k = self.node_count();
        match self.kind {
            GraphKind::Path => (0..self.size).map(|i| (i, i + 1)).collect(),
            GraphKind::Cycle => (0..k).map(|i| (i, (i + 1) % k)).collect(),
            GraphKind::Clique => (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingMeta {
    pub optimal_claimed: bool,
    #[serde(default)]
    pub diagnostics: Vec<String>,
}

/// Graph nodes placed on vertices (of a polygon, or of a bare point set).
///
/// `mapping[node]` is the vertex index of `node`; `edges` are vertex-index
/// pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub kind: GraphKind,
    pub mapping: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub meta: EmbeddingMeta,
}

impl Embedding {
    /// Embedding whose nodes are the vertices of `walk` in order, with edges
    /// between consecutive entries (closed when `kind` is a cycle).
    pub fn from_walk(kind: GraphKind, walk: &[usize]) -> Self {
        let mut edges: Vec<(usize, usize)> = walk.windows(2).map(|w| (w[0], w[1])).collect();
        if kind == GraphKind::Cycle && walk.len() > 2 {
            edges.push((walk[walk.len() - 1], walk[0]));
        }
        Embedding {
            kind,
            mapping: walk.to_vec(),
            edges,
            meta: EmbeddingMeta::default(),
        }
    }

    pub fn clique(vertices: &[usize]) -> Self {
        let edges = (0..vertices.len())
            .flat_map(|i| (i + 1..vertices.len()).map(move |j| (i, j)))
            .map(|(i, j)| (vertices[i], vertices[j]))
            .collect();
        Embedding {
            kind: GraphKind::Clique,
            mapping: vertices.to_vec(),
            edges,
            meta: EmbeddingMeta::default(),
        }
    }

    pub fn empty(kind: GraphKind) -> Self {
        Embedding {
            kind,
            mapping: Vec::new(),
            edges: Vec::new(),
            meta: EmbeddingMeta::default(),
        }
    }

    /// Edges or nodes, whichever [`GraphSpec::size`] counts for this kind.
    pub fn size(&self) -> usize {
        match self.kind {
            GraphKind::Path | GraphKind::Cycle => self.edges.len(),
            GraphKind::Clique => self.mapping.len(),
        }
    }

    pub fn spec(&self) -> GraphSpec {
        GraphSpec {
            kind: self.kind,
            size: self.size(),
        }
    }

    /// Edges rewritten in node indices, or `None` if an endpoint is not in
    /// the mapping.
    pub fn node_edges(&self) -> Option<Vec<(usize, usize)>> {
        let node_of = |v: usize| self.mapping.iter().position(|&m| m == v);
        self.edges
            .iter()
            .map(|&(a, b)| Some((node_of(a)?, node_of(b)?)))
            .collect()
    }

    pub fn with_diagnostic(mut self, msg: impl Into<String>) -> Self {
        self.meta.diagnostics.push(msg.into());
        self
    }
}
