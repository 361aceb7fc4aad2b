//! Exact validation of claimed embeddings.
//!
//! Every constructive routine in this crate is checked against these
//! functions; they never trust the producer.

use crate::embedding::{Embedding, GraphKind, GraphSpec};
use crate::geom::{collinear_overlap, segments_touch, Point, Segment};
use crate::polygon::Polygon;
use crate::visibility::{chord_status_unchecked, ChordStatus};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    /// Out-of-range index, self loop, or edge endpoint outside the mapping.
    Malformed,
    /// Node or edge count differs from the requested graph.
    SizeMismatch,
    NotInjective,
    EdgeIsPolygonEdge,
    ChordLeavesPolygon,
    ChordThroughVertex,
    ChordOverlapsBoundary,
    GraphEdgeCrossing,
    GraphEdgeOverlap,
    WrongDegreeSequence,
    NotSingleCycle,
    NotSinglePath,
    NotClique,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Vertex (or, for size mismatches, expected/actual count) indices that
    /// reproduce the failure.
    pub indices: Vec<usize>,
}

impl Violation {
    fn new(kind: ViolationKind, indices: Vec<usize>) -> Self {
        Violation { kind, indices }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.kind, self.indices)
    }
}

pub type Verdict = Result<(), Vec<Violation>>;

fn finish(mut violations: Vec<Violation>) -> Verdict {
    if violations.is_empty() {
        return Ok(());
    }
    violations.sort_by(|a, b| a.indices.cmp(&b.indices).then(a.kind.cmp(&b.kind)));
    violations.dedup();
    Err(violations)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Checks a polygon embedding against `spec`.
///
/// With `planar` set, graph edges may meet only at shared endpoints.
pub fn verify_embedding(poly: &Polygon, emb: &Embedding, spec: GraphSpec, planar: bool) -> Verdict {
    let n = poly.len();
    let mut out = structure_violations(n, emb, spec);
    for &(a, b) in &emb.edges {
        if a >= n || b >= n || a == b {
            continue;
        }
        let kind = match chord_status_unchecked(poly, a, b) {
            ChordStatus::Interior | ChordStatus::SameVertex => continue,
            ChordStatus::PolygonEdge => ViolationKind::EdgeIsPolygonEdge,
            ChordStatus::OverlapsBoundary => ViolationKind::ChordOverlapsBoundary,
            ChordStatus::ThroughVertex => ViolationKind::ChordThroughVertex,
            ChordStatus::LeavesPolygon => ViolationKind::ChordLeavesPolygon,
        };
        let (a, b) = ordered(a, b);
        out.push(Violation::new(kind, vec![a, b]));
    }
    if planar {
        out.extend(crossing_violations(poly.vertices(), &emb.edges));
    }
    finish(out)
}

/// Checks a straight-line drawing on a bare point set; always planar.
pub fn verify_point_drawing(points: &[Point], emb: &Embedding, spec: GraphSpec) -> Verdict {
    let mut out = structure_violations(points.len(), emb, spec);
    out.extend(crossing_violations(points, &emb.edges));
    finish(out)
}

/// Pairs of segments whose bounding boxes overlap, found by sweeping in x.
///
/// Exact as a filter (disjoint boxes cannot meet) and near-linear for
/// x-monotone chains.
pub fn box_overlapping_pairs(segs: &[Segment]) -> Vec<(usize, usize)> {
    let span = |s: &Segment, f: fn(&Point) -> i64| {
        let (u, v) = (f(&s.a), f(&s.b));
        (u.min(v), u.max(v))
    };
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by_key(|&i| (span(&segs[i], |p| p.x).0, i));
    let mut out = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        let (_, hi_x) = span(&segs[i], |p| p.x);
        let (lo_y, hi_y) = span(&segs[i], |p| p.y);
        for &j in &order[k + 1..] {
            if span(&segs[j], |p| p.x).0 > hi_x {
                break;
            }
            let (lo_y2, hi_y2) = span(&segs[j], |p| p.y);
            if lo_y2 <= hi_y && lo_y <= hi_y2 {
                out.push(ordered(i, j));
            }
        }
    }
    out.sort_unstable();
    out
}

/// How two drawn edges conflict, if at all. Meeting at a shared endpoint is
/// the only legal contact.
pub fn edge_conflict(s: Segment, t: Segment) -> Option<ViolationKind> {
    if collinear_overlap(s, t) {
        return Some(ViolationKind::GraphEdgeOverlap);
    }
    let shared = s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b;
    if !shared && segments_touch(s, t) {
        return Some(ViolationKind::GraphEdgeCrossing);
    }
    None
}

fn crossing_violations(points: &[Point], edges: &[(usize, usize)]) -> Vec<Violation> {
    let n = points.len();
    let valid: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(a, b)| a < n && b < n && a != b)
        .map(|(a, b)| ordered(a, b))
        .collect();
    let segs: Vec<Segment> = valid
        .iter()
        .map(|&(a, b)| Segment::new(points[a], points[b]))
        .collect();
    box_overlapping_pairs(&segs)
        .into_iter()
        .filter_map(|(i, j)| {
            let kind = edge_conflict(segs[i], segs[j])?;
            let (e, f) = if valid[i] <= valid[j] {
                (valid[i], valid[j])
            } else {
                (valid[j], valid[i])
            };
            Some(Violation::new(kind, vec![e.0, e.1, f.0, f.1]))
        })
        .collect()
}

fn structure_violations(n: usize, emb: &Embedding, spec: GraphSpec) -> Vec<Violation> {
    use ViolationKind::*;
    let mut out = Vec::new();

    for (node, &v) in emb.mapping.iter().enumerate() {
        if v >= n {
            out.push(Violation::new(Malformed, vec![node, v]));
        }
    }
    let mut first_node: BTreeMap<usize, usize> = BTreeMap::new();
    for (node, &v) in emb.mapping.iter().enumerate() {
        if let Some(&prev) = first_node.get(&v) {
            out.push(Violation::new(NotInjective, vec![v, prev, node]));
        } else {
            first_node.insert(v, node);
        }
    }
    for &(a, b) in &emb.edges {
        if a == b || !first_node.contains_key(&a) || !first_node.contains_key(&b) {
            let (a, b) = ordered(a, b);
            out.push(Violation::new(Malformed, vec![a, b]));
        }
    }
    if emb.kind != spec.kind
        || emb.mapping.len() != spec.node_count()
        || emb.edges.len() != spec.edge_count()
    {
        out.push(Violation::new(
            SizeMismatch,
            vec![spec.edge_count(), emb.edges.len()],
        ));
    }

    let mut degree: BTreeMap<usize, usize> = first_node.keys().map(|&v| (v, 0)).collect();
    for &(a, b) in &emb.edges {
        for v in [a, b] {
            if let Some(d) = degree.get_mut(&v) {
                *d += 1;
            }
        }
    }
    match spec.kind {
        GraphKind::Path | GraphKind::Cycle => {
            let bad: Vec<usize> = degree
                .iter()
                .filter(|(_, &d)| d == 0 || d > 2 || (spec.kind == GraphKind::Cycle && d != 2))
                .map(|(&v, _)| v)
                .collect();
            let leaves = degree.values().filter(|&&d| d == 1).count();
            if !bad.is_empty() {
                out.push(Violation::new(WrongDegreeSequence, bad));
            } else if spec.kind == GraphKind::Path && leaves != 2 && !degree.is_empty() {
                let ends = degree.iter().filter(|(_, &d)| d == 1).map(|(&v, _)| v);
                out.push(Violation::new(WrongDegreeSequence, ends.collect()));
            }
            if !is_connected(&degree, &emb.edges) {
                let kind = if spec.kind == GraphKind::Path {
                    NotSinglePath
                } else {
                    NotSingleCycle
                };
                out.push(Violation::new(kind, degree.keys().copied().collect()));
            }
        }
        GraphKind::Clique => {
            let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for &(a, b) in &emb.edges {
                *seen.entry(ordered(a, b)).or_default() += 1;
            }
            let verts: Vec<usize> = degree.keys().copied().collect();
            for (i, &a) in verts.iter().enumerate() {
                for &b in &verts[i + 1..] {
                    if seen.get(&(a, b)).copied().unwrap_or(0) != 1 {
                        out.push(Violation::new(NotClique, vec![a, b]));
                    }
                }
            }
        }
    }
    out
}

fn is_connected(vertices: &BTreeMap<usize, usize>, edges: &[(usize, usize)]) -> bool {
    let Some(&start) = vertices.keys().next() else {
        return true;
    };
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        if vertices.contains_key(&a) && vertices.contains_key(&b) {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    let mut seen = std::collections::BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in adj.get(&v).into_iter().flatten() {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == vertices.len()
}
