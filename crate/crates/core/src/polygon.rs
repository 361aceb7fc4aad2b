//! Simple polygons and vertex classification.

use crate::geom::{
    collinear_overlap, orientation, segments_touch, signed_area2, Orientation, Point, Segment,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {index} coordinate {point} exceeds the 2^30 bound")]
    CoordinateOutOfRange { index: usize, point: Point },
    #[error("vertices {first} and {second} coincide at {point}")]
    DuplicateVertex {
        first: usize,
        second: usize,
        point: Point,
    },
    #[error("vertices {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("vertices are listed clockwise")]
    NotCounterClockwise,
}

/// A validated simple polygon with counter-clockwise vertex order.
///
/// Edge `i` joins vertex `i` to vertex `(i + 1) % n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Validates `raw` as given; clockwise input is rejected.
    pub fn new(raw: Vec<Point>) -> Result<Self, PolygonError> {
        Self::validate(raw, false)
    }

    /// Validates `raw`, reversing it first if it is listed clockwise.
    pub fn new_normalized(raw: Vec<Point>) -> Result<Self, PolygonError> {
        Self::validate(raw, true)
    }

    pub fn validate(mut raw: Vec<Point>, normalize: bool) -> Result<Self, PolygonError> {
        let n = raw.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        if let Some((index, point)) = raw.iter().enumerate().find(|(_, p)| !p.in_range()) {
            return Err(PolygonError::CoordinateOutOfRange {
                index,
                point: *point,
            });
        }
        let mut sorted: Vec<(Point, usize)> = raw.iter().copied().zip(0..).collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(PolygonError::DuplicateVertex {
                    first: w[0].1.min(w[1].1),
                    second: w[0].1.max(w[1].1),
                    point: w[0].0,
                });
            }
        }
        for i in 0..n {
            let (a, b, c) = ((i + n - 1) % n, i, (i + 1) % n);
            if orientation(raw[a], raw[b], raw[c]) == Orientation::Collinear {
                return Err(PolygonError::CollinearTriple(a, b, c));
            }
        }
        let edge = |i: usize| Segment::new(raw[i], raw[(i + 1) % n]);
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let hit = if adjacent {
                    collinear_overlap(edge(i), edge(j))
                } else {
                    segments_touch(edge(i), edge(j))
                };
                if hit {
                    return Err(PolygonError::SelfIntersecting(i, j));
                }
            }
        }
        if signed_area2(&raw) < 0 {
            if !normalize {
                return Err(PolygonError::NotCounterClockwise);
            }
            raw.reverse();
        }
        Ok(Polygon { vertices: raw })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    /// `i` and `j` are joined by a polygon edge.
    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && (self.next(i) == j || self.next(j) == i)
    }

    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertices[i], self.vertices[self.next(i)])
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn kind(&self, i: usize) -> VertexKind {
        match orientation(
            self.vertices[self.prev(i)],
            self.vertices[i],
            self.vertices[self.next(i)],
        ) {
            Orientation::Cw => VertexKind::Reflex,
            _ => VertexKind::Convex,
        }
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        self.kind(i) == VertexKind::Reflex
    }

    pub fn reflex_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_reflex(i)).collect()
    }

    pub fn classify_vertices(&self) -> VertexClassification {
        let kinds: Vec<VertexKind> = (0..self.len()).map(|i| self.kind(i)).collect();
        let mut u_turn = vec![false; kinds.len()];
        for v in self.u_turn_vertices() {
            u_turn[v] = true;
        }
        VertexClassification {
            kinds,
            u_turn,
            isolated: None,
        }
    }

    /// Reflex vertices with a reflex polygon neighbor.
    pub fn u_turn_vertices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                self.is_reflex(i) && (self.is_reflex(self.prev(i)) || self.is_reflex(self.next(i)))
            })
            .collect()
    }

    /// Polygon edges `(i, i + 1)` whose endpoints are both u-turn vertices.
    pub fn u_turn_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| self.is_reflex(i) && self.is_reflex(self.next(i)))
            .map(|i| (i, self.next(i)))
            .collect()
    }

    pub fn is_convex(&self) -> bool {
        (0..self.len()).all(|i| !self.is_reflex(i))
    }

    pub fn is_pseudo_convex(&self) -> bool {
        self.u_turn_vertices().is_empty()
    }

    /// Same shape with vertex `k` relabelled as vertex 0.
    pub fn rotated(&self, k: usize) -> Polygon {
        let mut v = self.vertices.clone();
        v.rotate_left(k % self.len());
        Polygon { vertices: v }
    }

    /// Mirror image across the y axis, re-normalized to counter-clockwise
    /// order. Vertex `i` of `self` becomes vertex `n - 1 - i`.
    pub fn mirrored(&self) -> Polygon {
        let mut v: Vec<Point> = self
            .vertices
            .iter()
            .map(|p| Point::new(-p.x, p.y))
            .collect();
        v.reverse();
        Polygon { vertices: v }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    Convex,
    Reflex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    pub kinds: Vec<VertexKind>,
    pub u_turn: Vec<bool>,
    /// Filled in by [`crate::visibility::classify_with_isolation`].
    pub isolated: Option<Vec<bool>>,
}

impl VertexClassification {
    pub fn reflex(&self) -> Vec<usize> {
        self.kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == VertexKind::Reflex)
            .map(|(i, _)| i)
            .collect()
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn pts(coords: &[(i64, i64)]) -> Vec<Point> {
        coords.iter().map(|&c| c.into()).collect()
    }

    #[test]
    fn validation_examples() {
        assert!(Polygon::new(pts(&[(0, 0), (4, 0), (4, 4), (0, 4)])).is_ok());
        assert!(matches!(
            Polygon::new(pts(&[(0, 0), (4, 4), (4, 0), (0, 4)])),
            Err(PolygonError::SelfIntersecting(_, _))
        ));
        assert_eq!(
            Polygon::new(pts(&[(4, 4), (4, 0), (0, 0)])),
            Err(PolygonError::NotCounterClockwise)
        );
        let fixed = Polygon::new_normalized(pts(&[(4, 4), (4, 0), (0, 0)])).unwrap();
        assert_eq!(fixed.vertices(), pts(&[(0, 0), (4, 0), (4, 4)]).as_slice());
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Polygon::new(pts(&[(0, 0), (1, 0)])),
            Err(PolygonError::TooFewVertices(2))
        );
        assert!(matches!(
            Polygon::new(pts(&[(0, 0), (4, 0), (4, 4), (4, 0)])),
            Err(PolygonError::DuplicateVertex {
                first: 1,
                second: 3,
                ..
            })
        ));
        assert_eq!(
            Polygon::new(pts(&[(0, 0), (2, 0), (4, 0), (4, 4)])),
            Err(PolygonError::CollinearTriple(0, 1, 2))
        );
        assert!(matches!(
            Polygon::new(pts(&[(0, 0), (1 << 31, 0), (0, 4)])),
            Err(PolygonError::CoordinateOutOfRange { index: 1, .. })
        ));
        // Vertex 4 touches edge 1 from inside: not simple.
        assert!(matches!(
            Polygon::new(pts(&[(0, 0), (4, 0), (4, 4), (2, 4), (4, 2), (0, 4)])),
            Err(PolygonError::SelfIntersecting(_, _))
        ));
    }

    #[test]
    fn classify_examples() {
        assert!(square().classify_vertices().reflex().is_empty());
        assert_eq!(l6().reflex_vertices(), vec![3]);
        assert_eq!(t8().reflex_vertices(), vec![1, 4]);
        assert_eq!(u8().reflex_vertices(), vec![4, 5]);
    }

    #[test]
    fn u_turn_examples() {
        assert_eq!(u8().u_turn_vertices(), vec![4, 5]);
        assert!(l6().u_turn_vertices().is_empty());
        assert!(h6().u_turn_vertices().is_empty());
        assert_eq!(u8().u_turn_edges(), vec![(4, 5)]);
        assert!(t8().u_turn_edges().is_empty());
        assert!(square().u_turn_edges().is_empty());
        let c = u8().classify_vertices();
        assert_eq!(
            c.u_turn,
            vec![false, false, false, false, true, true, false, false]
        );
    }

    #[test]
    fn convexity_examples() {
        assert!(square().is_convex());
        assert!(!l6().is_convex());
        assert!(h6().is_convex());
        assert!(h6().is_pseudo_convex());
        assert!(t8().is_pseudo_convex());
        assert!(l6().is_pseudo_convex());
        assert!(!u8().is_pseudo_convex());
    }

    #[test]
    fn reversal_renormalizes_to_same_classification() {
        for p in [l6(), t8(), u8(), h6()] {
            let mut raw = p.vertices().to_vec();
            raw.reverse();
            let back = Polygon::new_normalized(raw).unwrap();
            assert_eq!(back.classify_vertices(), p.classify_vertices());
        }
    }

    #[test]
    fn mirror_and_rotate_stay_valid() {
        for p in [l6(), t8(), u8(), h6()] {
            let m = p.mirrored();
            assert!(Polygon::new(m.vertices().to_vec()).is_ok());
            assert_eq!(m.reflex_vertices().len(), p.reflex_vertices().len());
            let r = p.rotated(3);
            assert_eq!(r.vertex(0), p.vertex(3));
            assert!(Polygon::new(r.vertices().to_vec()).is_ok());
        }
    }
}
