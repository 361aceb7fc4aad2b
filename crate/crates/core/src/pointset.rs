//! Straight-line path and cycle drawings on a bare point set.
//!
//! Both constructions sort the points by x (ties by y) and are dominated by
//! that sort.

use crate::embedding::{Embedding, GraphKind, GraphSpec};
use crate::geom::{orientation, Orientation, Point, Segment};
use crate::verify::{box_overlapping_pairs, edge_conflict};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointSetError {
    #[error("need at least {min} points, got {got}")]
    TooFewPoints { got: usize, min: usize },
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("point {0} exceeds the 2^30 coordinate bound")]
    CoordinateOutOfRange(usize),
    #[error("points {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),
}

/// Distinct points; indices refer to the input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, PointSetError> {
        if let Some(i) = points.iter().position(|p| !p.in_range()) {
            return Err(PointSetError::CoordinateOutOfRange(i));
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by_key(|&i| (points[i], i));
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(PointSetError::DuplicatePoint {
                    first: w[0].min(w[1]),
                    second: w[0].max(w[1]),
                });
            }
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Indices sorted by x, then y.
    pub fn x_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.sort_unstable_by_key(|&i| (self.points[i].x, self.points[i].y));
        order
    }

    /// First collinear triple, by brute force over all triples.
    pub fn find_collinear_triple(&self) -> Option<(usize, usize, usize)> {
        let p = &self.points;
        let n = p.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if orientation(p[i], p[j], p[k]) == Orientation::Collinear {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Path through the points in x order.
pub fn embed_path_pointset(set: &PointSet) -> Result<Embedding, PointSetError> {
    if set.len() < 2 {
        return Err(PointSetError::TooFewPoints {
            got: set.len(),
            min: 2,
        });
    }
    Ok(Embedding::from_walk(GraphKind::Path, &set.x_order()))
}

/// The pairing construction on an x-sorted list: consecutive pairs
/// `(p_2i, p_2i+1)` split into a lower chain of pair minima and an upper
/// chain of pair maxima (by y), joined at both ends. For odd counts the
/// last point is appended to the lower chain, or to the upper chain when
/// `odd_to_upper` is set.
///
/// The result is a Hamiltonian cycle but is not planar in general.
pub fn pairing_cycle(set: &PointSet, odd_to_upper: bool) -> Vec<usize> {
    let p = set.points();
    let order = set.x_order();
    let mut lower = Vec::with_capacity(order.len() / 2 + 1);
    let mut upper = Vec::with_capacity(order.len() / 2 + 1);
    for pair in order.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        if p[a].y <= p[b].y {
            lower.push(a);
            upper.push(b);
        } else {
            lower.push(b);
            upper.push(a);
        }
    }
    if order.len() % 2 == 1 {
        let last = order[order.len() - 1];
        if odd_to_upper {
            upper.push(last);
        } else {
            lower.push(last);
        }
    }
    upper.reverse();
    lower.extend(upper);
    lower
}

/// Split by the line through the leftmost and rightmost points: points
/// below it in x order, then points above it in reverse x order. Always a
/// simple polygon for point sets without collinear triples.
pub fn monotone_cycle(set: &PointSet) -> Vec<usize> {
    let p = set.points();
    let order = set.x_order();
    let (first, last) = (order[0], order[order.len() - 1]);
    let (a, b) = (p[first], p[last]);
    let mut lower = vec![first];
    let mut upper = Vec::new();
    for &i in &order[1..order.len() - 1] {
        match orientation(a, b, p[i]) {
            Orientation::Cw => lower.push(i),
            _ => upper.push(i),
        }
    }
    lower.push(last);
    upper.reverse();
    lower.extend(upper);
    lower
}

/// `true` if the closed walk draws without any two edges meeting away
/// from shared endpoints. Near-linear for x-monotone chains.
pub fn closed_walk_is_plane(points: &[Point], walk: &[usize]) -> bool {
    let k = walk.len();
    let segs: Vec<Segment> = (0..k)
        .map(|i| Segment::new(points[walk[i]], points[walk[(i + 1) % k]]))
        .collect();
    box_overlapping_pairs(&segs)
        .into_iter()
        .all(|(i, j)| edge_conflict(segs[i], segs[j]).is_none())
}

/// Largest point count for which [`embed_cycle_pointset`] checks general
/// position up front. Larger inputs are trusted, and only the output is
/// checked.
pub const GENERAL_POSITION_CHECK_LIMIT: usize = 2048;

/// Hamiltonian cycle drawn without crossings.
///
/// Runs the pairing construction first (both odd-count placements when the
/// count is odd); if no variant is plane, falls back to the monotone split.
/// The diagnostic records which construction was used.
pub fn embed_cycle_pointset(set: &PointSet) -> Result<Embedding, PointSetError> {
    if set.len() < 4 {
        return Err(PointSetError::TooFewPoints {
            got: set.len(),
            min: 4,
        });
    }
    if set.len() <= GENERAL_POSITION_CHECK_LIMIT {
        if let Some((i, j, k)) = set.find_collinear_triple_fast() {
            return Err(PointSetError::CollinearTriple(i, j, k));
        }
    }
    let variants: &[bool] = if set.len() % 2 == 1 {
        &[false, true]
    } else {
        &[false]
    };
    for &odd_to_upper in variants {
        let walk = pairing_cycle(set, odd_to_upper);
        if closed_walk_is_plane(set.points(), &walk) {
            let note = if odd_to_upper {
                "pairing construction, odd point on upper chain"
            } else {
                "pairing construction"
            };
            return Ok(Embedding::from_walk(GraphKind::Cycle, &walk).with_diagnostic(note));
        }
    }
    let walk = monotone_cycle(set);
    if !closed_walk_is_plane(set.points(), &walk) {
        // Only reachable with collinear triples in a large unchecked input.
        let (i, j, k) = set
            .find_collinear_triple_fast()
            .expect("monotone split of a point set in general position is simple");
        return Err(PointSetError::CollinearTriple(i, j, k));
    }
    Ok(Embedding::from_walk(GraphKind::Cycle, &walk)
        .with_diagnostic("pairing construction crossed itself; monotone split used"))
}

impl PointSet {
    /// Collinear-triple check that is exact but avoids the cubic scan for
    /// large sets: for each point, sort the directions to all others and
    /// look for parallel neighbors. `O(n^2 log n)`.
    pub fn find_collinear_triple_fast(&self) -> Option<(usize, usize, usize)> {
        let p = &self.points;
        let n = p.len();
        if n <= 64 {
            return self.find_collinear_triple();
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..n {
            let mut dirs: Vec<(i64, i64, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let (mut dx, mut dy) = (p[j].x - p[i].x, p[j].y - p[i].y);
                    // Fold opposite directions together.
                    if dy < 0 || (dy == 0 && dx < 0) {
                        dx = -dx;
                        dy = -dy;
                    }
                    (dx, dy, j)
                })
                .collect();
            dirs.sort_by(|a, b| {
                // Angle order on the upper half plane via cross product.
                let c = (a.0 as i128) * (b.1 as i128) - (a.1 as i128) * (b.0 as i128);
                0.cmp(&c)
            });
            for w in dirs.windows(2) {
                let c = (w[0].0 as i128) * (w[1].1 as i128) - (w[0].1 as i128) * (w[1].0 as i128);
                if c == 0 {
                    let mut t = [i, w[0].2, w[1].2];
                    t.sort_unstable();
                    let t = (t[0], t[1], t[2]);
                    if best.is_none_or(|b| t < b) {
                        best = Some(t);
                    }
                }
            }
        }
        best
    }
}

/// Verifies a point-set drawing of a path or cycle (thin wrapper kept next
/// to the constructions for callers that only hold a [`PointSet`]).
pub fn verify_pointset(set: &PointSet, emb: &Embedding) -> crate::verify::Verdict {
    let spec = GraphSpec {
        kind: emb.kind,
        size: emb.size(),
    };
    crate::verify::verify_point_drawing(set.points(), emb, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(coords: &[(i64, i64)]) -> PointSet {
        PointSet::new(coords.iter().map(|&c| c.into()).collect()).unwrap()
    }

    fn coords(s: &PointSet, e: &Embedding) -> Vec<((i64, i64), (i64, i64))> {
        e.edges
            .iter()
            .map(|&(a, b)| {
                let (p, q) = (s.points()[a], s.points()[b]);
                ((p.x, p.y), (q.x, q.y))
            })
            .collect()
    }

    #[test]
    fn path_examples() {
        let s = set(&[(0, 0), (2, 3), (1, 1)]);
        let e = embed_path_pointset(&s).unwrap();
        assert_eq!(coords(&s, &e), vec![((0, 0), (1, 1)), ((1, 1), (2, 3))]);
        let s = set(&[(0, 0), (1, 0)]);
        assert_eq!(embed_path_pointset(&s).unwrap().edges.len(), 1);
        let s = set(&[(0, 0), (0, 5), (1, 2)]);
        let e = embed_path_pointset(&s).unwrap();
        assert_eq!(coords(&s, &e), vec![((0, 0), (0, 5)), ((0, 5), (1, 2))]);
        assert_eq!(verify_pointset(&s, &e), Ok(()));
        assert_eq!(
            embed_path_pointset(&set(&[(0, 0)])),
            Err(PointSetError::TooFewPoints { got: 1, min: 2 })
        );
    }

    #[test]
    fn cycle_examples() {
        let s = set(&[(0, 0), (1, 2), (2, 1), (3, 3)]);
        let e = embed_cycle_pointset(&s).unwrap();
        let mut got = coords(&s, &e);
        got.sort();
        let mut want = vec![
            ((0, 0), (2, 1)),
            ((2, 1), (3, 3)),
            ((3, 3), (1, 2)),
            ((1, 2), (0, 0)),
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(verify_pointset(&s, &e), Ok(()));

        let s = set(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        let e = embed_cycle_pointset(&s).unwrap();
        assert_eq!(verify_pointset(&s, &e), Ok(()));
        assert_eq!(e.edges.len(), 4);

        let s = set(&[(0, 0), (1, 3), (2, 1), (3, 4), (4, 1)]);
        let e = embed_cycle_pointset(&s).unwrap();
        // (4,2) joins the lower chain: 0 -> 2 -> 4 -> 3 -> 1 -> 0.
        assert_eq!(e.mapping, vec![0, 2, 4, 3, 1]);
        assert_eq!(e.meta.diagnostics, vec!["pairing construction".to_string()]);
        assert_eq!(verify_pointset(&s, &e), Ok(()));
    }

    #[test]
    fn cycle_errors() {
        assert_eq!(
            embed_cycle_pointset(&set(&[(0, 0), (1, 5), (2, 1)])),
            Err(PointSetError::TooFewPoints { got: 3, min: 4 })
        );
        assert_eq!(
            embed_cycle_pointset(&set(&[(0, 0), (1, 1), (2, 2), (0, 5)])),
            Err(PointSetError::CollinearTriple(0, 1, 2))
        );
        assert!(matches!(
            PointSet::new(vec![Point::new(1, 1), Point::new(1, 1)]),
            Err(PointSetError::DuplicatePoint {
                first: 0,
                second: 1
            })
        ));
    }

    #[test]
    fn pairing_construction_can_cross() {
        // Lower chain (0,0)-(2,100)-(4,0) against upper (1,1)-(3,101)-(5,1).
        let s = set(&[(0, 0), (1, 1), (2, 100), (3, 101), (4, 0), (5, 1)]);
        let walk = pairing_cycle(&s, false);
        assert!(!closed_walk_is_plane(s.points(), &walk));
        let e = embed_cycle_pointset(&s).unwrap();
        assert_eq!(verify_pointset(&s, &e), Ok(()));
        assert!(e.meta.diagnostics[0].contains("monotone"));
    }

    #[test]
    fn fast_collinear_check_agrees_with_cubic_scan() {
        let mut pts: Vec<Point> = (0..80)
            .map(|i: i64| Point::new(i * 7919 % 1000, (i * i * 31 + 17) % 997))
            .collect();
        pts.dedup();
        let s = PointSet::new(pts).unwrap();
        assert_eq!(s.find_collinear_triple_fast(), s.find_collinear_triple());
    }
}
