//! Vertex-to-vertex visibility inside a simple polygon.
//!
//! Visibility is conservative: a segment that grazes a vertex other than
//! its endpoints, or runs along a boundary edge, is not a chord.

use crate::geom::{
    collinear_overlap, on_open_segment, orientation, proper_intersect, Orientation, Point, Segment,
};
use crate::polygon::{Polygon, VertexClassification};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("vertex index {index} out of range for polygon with {n} vertices")]
pub struct IndexOutOfRange {
    pub index: usize,
    pub n: usize,
}

/// Why a vertex pair is, or is not, an interior chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChordStatus {
    Interior,
    SameVertex,
    PolygonEdge,
    /// Runs along a boundary edge for a positive length.
    OverlapsBoundary,
    /// Touches a vertex other than its endpoints.
    ThroughVertex,
    /// Crosses the boundary or starts outside the interior angle.
    LeavesPolygon,
}

/// Strict in-cone test: does the ray from vertex `i` toward `target`
/// start into the polygon interior?
fn in_cone(poly: &Polygon, i: usize, target: Point) -> bool {
    let a = poly.vertex(i);
    let prev = poly.vertex(poly.prev(i));
    let next = poly.vertex(poly.next(i));
    let left = |p: Point, q: Point, r: Point| orientation(p, q, r) == Orientation::Ccw;
    if poly.is_reflex(i) {
        // Interior angle exceeds pi: reject only the closed exterior wedge.
        let left_on = |p: Point, q: Point, r: Point| orientation(p, q, r) != Orientation::Cw;
        !(left_on(a, target, next) && left_on(target, a, prev))
    } else {
        left(a, target, prev) && left(target, a, next)
    }
}

pub fn chord_status(poly: &Polygon, i: usize, j: usize) -> Result<ChordStatus, IndexOutOfRange> {
    let n = poly.len();
    for index in [i, j] {
        if index >= n {
            return Err(IndexOutOfRange { index, n });
        }
    }
    Ok(chord_status_unchecked(poly, i, j))
}

pub(crate) fn chord_status_unchecked(poly: &Polygon, i: usize, j: usize) -> ChordStatus {
    if i == j {
        return ChordStatus::SameVertex;
    }
    if poly.are_adjacent(i, j) {
        return ChordStatus::PolygonEdge;
    }
    let chord = Segment::new(poly.vertex(i), poly.vertex(j));
    if poly.edges().any(|e| collinear_overlap(chord, e)) {
        return ChordStatus::OverlapsBoundary;
    }
    if (0..poly.len()).any(|k| k != i && k != j && on_open_segment(poly.vertex(k), chord)) {
        return ChordStatus::ThroughVertex;
    }
    if poly.edges().any(|e| proper_intersect(chord, e)) {
        return ChordStatus::LeavesPolygon;
    }
    if !in_cone(poly, i, poly.vertex(j)) || !in_cone(poly, j, poly.vertex(i)) {
        return ChordStatus::LeavesPolygon;
    }
    ChordStatus::Interior
}

/// The open segment between vertices `i` and `j` lies strictly inside the
/// polygon and `i`, `j` are not polygon neighbors.
pub fn is_interior_chord(poly: &Polygon, i: usize, j: usize) -> Result<bool, IndexOutOfRange> {
    chord_status(poly, i, j).map(|s| s == ChordStatus::Interior)
}

/// Visible set of `i`: the vertex itself, its two neighbors, and every
/// vertex joined to it by an interior chord. Sorted ascending.
pub fn visible_set(poly: &Polygon, i: usize) -> Result<Vec<usize>, IndexOutOfRange> {
    if i >= poly.len() {
        return Err(IndexOutOfRange {
            index: i,
            n: poly.len(),
        });
    }
    Ok((0..poly.len())
        .filter(|&j| {
            j == i
                || poly.are_adjacent(i, j)
                || chord_status_unchecked(poly, i, j) == ChordStatus::Interior
        })
        .collect())
}

/// Symmetric visibility relation over polygon vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityGraph {
    n: usize,
    visible: Vec<bool>,
    chord: Vec<bool>,
}

impl VisibilityGraph {
    pub fn new(poly: &Polygon) -> Self {
        let n = poly.len();
        let mut chord = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                if chord_status_unchecked(poly, i, j) == ChordStatus::Interior {
                    chord[i * n + j] = true;
                    chord[j * n + i] = true;
                }
            }
        }
        let mut visible = chord.clone();
        for i in 0..n {
            visible[i * n + i] = true;
            visible[i * n + poly.next(i)] = true;
            visible[poly.next(i) * n + i] = true;
        }
        VisibilityGraph { n, visible, chord }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn visible(&self, i: usize, j: usize) -> bool {
        self.visible[i * self.n + j]
    }

    pub fn is_chord(&self, i: usize, j: usize) -> bool {
        self.chord[i * self.n + j]
    }

    pub fn visible_set(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.visible(i, j)).collect()
    }

    /// Chord partners of `i` (the visible set minus `i` and its neighbors).
    pub fn chord_partners(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.is_chord(i, j)).collect()
    }

    /// All interior chords as `(i, j)` with `i < j`, lexicographic.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.is_chord(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Isolated vertices: fewer than five visible vertices, or exactly five
    /// with the two chord partners being polygon neighbors of each other.
    pub fn isolated(&self) -> Vec<bool> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let partners = self.chord_partners(i);
                match partners.len() {
                    0 | 1 => true,
                    2 => {
                        let (a, b) = (partners[0], partners[1]);
                        (a + 1) % n == b || (b + 1) % n == a
                    }
                    _ => false,
                }
            })
            .collect()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.isolated()
            .into_iter()
            .enumerate()
            .filter(|(_, iso)| *iso)
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn visibility_graph(poly: &Polygon) -> VisibilityGraph {
    VisibilityGraph::new(poly)
}

pub fn isolated_vertices(poly: &Polygon) -> Vec<usize> {
    VisibilityGraph::new(poly).isolated_vertices()
}

/// Human-readable statement of the isolation rule, reported alongside
/// analysis output because the second clause admits two readings.
pub const ISOLATION_RULE: &str = "isolated iff the visible set (the vertex, its two neighbors and \
its chord partners) has fewer than five members, or exactly five and the two chord partners are \
polygon neighbors of each other";

/// Vertex classification with the isolation flags filled in.
pub fn classify_with_isolation(poly: &Polygon, vis: &VisibilityGraph) -> VertexClassification {
    let mut c = poly.classify_vertices();
    c.isolated = Some(vis.isolated());
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn chord_examples() {
        assert_eq!(is_interior_chord(&l6(), 0, 3), Ok(true));
        assert_eq!(is_interior_chord(&l6(), 1, 4), Ok(false));
        assert_eq!(chord_status(&l6(), 1, 4), Ok(ChordStatus::LeavesPolygon));
        assert_eq!(is_interior_chord(&square(), 0, 1), Ok(false));
        assert_eq!(chord_status(&square(), 0, 1), Ok(ChordStatus::PolygonEdge));
        assert_eq!(
            is_interior_chord(&square(), 0, 4),
            Err(IndexOutOfRange { index: 4, n: 4 })
        );
    }

    #[test]
    fn chord_status_degenerate_cases() {
        // (4,4)-(0,4) in U8 runs along the notch rim.
        assert_eq!(chord_status(&u8(), 3, 7), Ok(ChordStatus::OverlapsBoundary));
        assert_eq!(chord_status(&t8(), 0, 4), Ok(ChordStatus::OverlapsBoundary));
        // The diagonal (0,0)-(6,6) grazes the reflex vertex (3,3).
        let notch = poly(&[(0, 0), (6, 0), (6, 6), (2, 6), (3, 3), (0, 4)]);
        assert_eq!(chord_status(&notch, 0, 2), Ok(ChordStatus::ThroughVertex));
        // Along an edge direction but through the tip of an arrowhead.
        let arrow = poly(&[(0, 0), (6, 0), (6, 6), (3, 3), (0, 6)]);
        assert_eq!(
            chord_status(&arrow, 0, 2),
            Ok(ChordStatus::OverlapsBoundary)
        );
        // Outside the interior wedge of the reflex vertex 3 in L6.
        assert_eq!(chord_status(&l6(), 2, 4), Ok(ChordStatus::LeavesPolygon));
    }

    #[test]
    fn visible_set_examples() {
        let h = h6();
        for i in 0..6 {
            assert_eq!(visible_set(&h, i).unwrap(), (0..6).collect::<Vec<_>>());
        }
        assert_eq!(visible_set(&l6(), 1).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(visible_set(&l6(), 0).unwrap(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn visibility_graph_examples() {
        let g = visibility_graph(&square());
        assert!((0..4).all(|i| (0..4).all(|j| g.visible(i, j))));
        let g = visibility_graph(&l6());
        assert_eq!(g.chords(), vec![(0, 2), (0, 3), (0, 4), (1, 3), (3, 5)]);
        let g = visibility_graph(&u8());
        assert!(!g.visible(3, 7));
    }

    #[test]
    fn isolated_examples() {
        assert!(isolated_vertices(&h6()).is_empty());
        assert_eq!(isolated_vertices(&l6()), vec![1, 2, 4, 5]);
        assert_eq!(isolated_vertices(&t8()), vec![0, 2, 3, 5]);
        let g = visibility_graph(&t8());
        assert_eq!(g.visible_set(2), vec![1, 2, 3, 4]);
        assert_eq!(g.visible_set(3), vec![1, 2, 3, 4]);
    }

    #[test]
    fn visibility_is_symmetric_and_contains_neighbors() {
        for p in [square(), l6(), t8(), u8(), h6()] {
            let g = visibility_graph(&p);
            for i in 0..p.len() {
                let s = g.visible_set(i);
                assert!(s.len() >= 3);
                assert!(s.contains(&p.prev(i)) && s.contains(&i) && s.contains(&p.next(i)));
                for j in 0..p.len() {
                    assert_eq!(g.visible(i, j), g.visible(j, i));
                    assert_eq!(g.visible(i, j), visible_set(&p, i).unwrap().contains(&j));
                }
            }
        }
    }
}
