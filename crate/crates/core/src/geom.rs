//! Exact integer predicates.
//!
//! Coordinates are bounded by [`MAX_COORD`] in magnitude, so every cross
//! product below is evaluated in `i128` without overflow and without any
//! epsilon.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest admissible coordinate magnitude.
pub const MAX_COORD: i64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_range(&self) -> bool {
        self.x.abs() <= MAX_COORD && self.y.abs() <= MAX_COORD
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }
}

/// Twice the signed area of the triangle `p, q, r`: `(q - p) x (r - p)`.
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    let qx = q.x as i128 - p.x as i128;
    let qy = q.y as i128 - p.y as i128;
    let rx = r.x as i128 - p.x as i128;
    let ry = r.y as i128 - p.y as i128;
    qx * ry - qy * rx
}

pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r).signum() {
        1 => Orientation::Ccw,
        -1 => Orientation::Cw,
        _ => Orientation::Collinear,
    }
}

fn within(a: i64, b: i64, v: i64) -> bool {
    a.min(b) <= v && v <= a.max(b)
}

/// Closed-segment membership.
pub fn on_segment(p: Point, s: Segment) -> bool {
    orientation(s.a, s.b, p) == Orientation::Collinear
        && within(s.a.x, s.b.x, p.x)
        && within(s.a.y, s.b.y, p.y)
}

/// `p` lies on `s` but is neither of its endpoints.
pub fn on_open_segment(p: Point, s: Segment) -> bool {
    p != s.a && p != s.b && on_segment(p, s)
}

/// The open interiors of `s1` and `s2` cross at a single point.
pub fn proper_intersect(s1: Segment, s2: Segment) -> bool {
    let o1 = orientation(s1.a, s1.b, s2.a);
    let o2 = orientation(s1.a, s1.b, s2.b);
    let o3 = orientation(s2.a, s2.b, s1.a);
    let o4 = orientation(s2.a, s2.b, s1.b);
    use Orientation::Collinear;
    if o1 == Collinear || o2 == Collinear || o3 == Collinear || o4 == Collinear {
        return false;
    }
    o1 != o2 && o3 != o4
}

/// Collinear segments sharing a piece of positive length.
pub fn collinear_overlap(s1: Segment, s2: Segment) -> bool {
    if orientation(s1.a, s1.b, s2.a) != Orientation::Collinear
        || orientation(s1.a, s1.b, s2.b) != Orientation::Collinear
    {
        return false;
    }
    // Project onto the dominant axis of s1.
    let (lo1, hi1, lo2, hi2) = if s1.a.x != s1.b.x {
        (
            s1.a.x.min(s1.b.x),
            s1.a.x.max(s1.b.x),
            s2.a.x.min(s2.b.x),
            s2.a.x.max(s2.b.x),
        )
    } else {
        (
            s1.a.y.min(s1.b.y),
            s1.a.y.max(s1.b.y),
            s2.a.y.min(s2.b.y),
            s2.a.y.max(s2.b.y),
        )
    };
    lo1.max(lo2) < hi1.min(hi2)
}

/// Closed segments share at least one point.
pub fn segments_touch(s1: Segment, s2: Segment) -> bool {
    let o1 = orientation(s1.a, s1.b, s2.a);
    let o2 = orientation(s1.a, s1.b, s2.b);
    let o3 = orientation(s2.a, s2.b, s1.a);
    let o4 = orientation(s2.a, s2.b, s1.b);
    if o1 != o2
        && o3 != o4
        && [o1, o2, o3, o4]
            .iter()
            .all(|o| *o != Orientation::Collinear)
    {
        return true;
    }
    on_segment(s2.a, s1) || on_segment(s2.b, s1) || on_segment(s1.a, s2) || on_segment(s1.b, s2)
}

/// Twice the signed (shoelace) area of a closed vertex ring.
pub fn signed_area2(ring: &[Point]) -> i128 {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let p = ring[i];
            let q = ring[(i + 1) % n];
            p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128
        })
        .sum()
}
