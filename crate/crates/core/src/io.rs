//! Text and JSON formats.
//!
//! Polygon and point files hold one vertex per line as two base-10
//! integers separated by a single space. Lines starting with `#` are
//! comments. Embeddings travel as JSON:
//!
//! ```json
//! {
//!   "polygon": [[0, 0], [4, 0], [4, 4], [0, 4]],
//!   "graph": {"kind": "path", "nodes": 2, "edges": [[0, 1]]},
//!   "mapping": [3, 1],
//!   "edges": [[3, 1]],
//!   "meta": {"optimal_claimed": true, "diagnostics": []}
//! }
//! ```
//!
//! Point-set drawings use a `points` field in place of `polygon`.

use crate::embedding::{Embedding, EmbeddingMeta, GraphKind};
use crate::geom::Point;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `x y`, got `{text}`")]
    BadLine { line: usize, text: String },
    #[error("line {line}: coordinate out of the 2^30 bound")]
    OutOfRange { line: usize },
}

/// Parses the `x y` line format. Vertex order is as listed.
pub fn parse_points(text: &str) -> Result<Vec<Point>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.starts_with('#') || trimmed.trim().is_empty() {
            continue;
        }
        let bad = || ParseError::BadLine {
            line,
            text: trimmed.to_string(),
        };
        let (xs, ys) = trimmed.split_once(' ').ok_or_else(bad)?;
        let x: i64 = xs.parse().map_err(|_| bad())?;
        let y: i64 = ys.parse().map_err(|_| bad())?;
        let p = Point::new(x, y);
        if !p.in_range() {
            return Err(ParseError::OutOfRange { line });
        }
        out.push(p);
    }
    Ok(out)
}

/// Writes points in the line format, preceded by optional comment lines.
pub fn format_points(points: &[Point], header: &[String]) -> String {
    let mut s = String::new();
    for h in header {
        if !h.starts_with('#') {
            s.push_str("# ");
        }
        s.push_str(h);
        s.push('\n');
    }
    for p in points {
        s.push_str(&format!("{} {}\n", p.x, p.y));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub kind: GraphKind,
    pub nodes: usize,
    /// Node-index pairs.
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[i64; 2]>>,
    pub graph: GraphDoc,
    pub mapping: Vec<usize>,
    /// Vertex-index pairs.
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub meta: EmbeddingMeta,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("graph edge {0:?} refers to a node outside the mapping")]
    DanglingNode([usize; 2]),
    #[error("graph edges do not match the vertex edges under the mapping")]
    GraphMismatch,
}

fn coords(points: &[Point]) -> Vec<[i64; 2]> {
    points.iter().map(|p| [p.x, p.y]).collect()
}

pub fn doc_points(raw: &[[i64; 2]]) -> Vec<Point> {
    raw.iter().map(|&[x, y]| Point::new(x, y)).collect()
}

impl EmbeddingDoc {
    fn build(emb: &Embedding) -> (GraphDoc, Vec<[usize; 2]>) {
        let node_edges = emb
            .node_edges()
            .unwrap_or_default()
            .into_iter()
            .map(|(a, b)| [a, b])
            .collect();
        let graph = GraphDoc {
            kind: emb.kind,
            nodes: emb.mapping.len(),
            edges: node_edges,
        };
        let edges = emb.edges.iter().map(|&(a, b)| [a, b]).collect();
        (graph, edges)
    }

    pub fn for_polygon(polygon: &[Point], emb: &Embedding) -> Self {
        let (graph, edges) = Self::build(emb);
        EmbeddingDoc {
            polygon: Some(coords(polygon)),
            points: None,
            graph,
            mapping: emb.mapping.clone(),
            edges,
            meta: emb.meta.clone(),
        }
    }

    pub fn for_points(points: &[Point], emb: &Embedding) -> Self {
        let (graph, edges) = Self::build(emb);
        EmbeddingDoc {
            polygon: None,
            points: Some(coords(points)),
            graph,
            mapping: emb.mapping.clone(),
            edges,
            meta: emb.meta.clone(),
        }
    }

    /// Rebuilds the embedding, checking that the node-level graph and the
    /// vertex-level edge list agree under the mapping.
    pub fn to_embedding(&self) -> Result<Embedding, DocError> {
        let mut from_graph = Vec::with_capacity(self.graph.edges.len());
        for &e in &self.graph.edges {
            let (Some(&a), Some(&b)) = (self.mapping.get(e[0]), self.mapping.get(e[1])) else {
                return Err(DocError::DanglingNode(e));
            };
            from_graph.push(if a <= b { (a, b) } else { (b, a) });
        }
        let mut listed: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&[a, b]| if a <= b { (a, b) } else { (b, a) })
            .collect();
        from_graph.sort_unstable();
        listed.sort_unstable();
        if from_graph != listed {
            return Err(DocError::GraphMismatch);
        }
        Ok(Embedding {
            kind: self.graph.kind,
            mapping: self.mapping.clone(),
            edges: self.edges.iter().map(|&[a, b]| (a, b)).collect(),
            meta: self.meta.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("embedding documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
