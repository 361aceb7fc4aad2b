//! Seeded polygon generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a given configuration yields the same polygon on
//! every platform.

use crate::geom::{Point, MAX_COORD};
use crate::polygon::Polygon;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const RNG_NAME: &str = "ChaCha8Rng::seed_from_u64";
pub const DEFAULT_SPAN: i64 = 1_000_000;
const MAX_ATTEMPTS: usize = 1000;
/// Inward steps allowed per pulled vertex.
const MAX_STEPS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Convex,
    PseudoConvex,
    Orthoconvex,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::Convex => "convex",
            GenKind::PseudoConvex => "pseudoconvex",
            GenKind::Orthoconvex => "ortho",
        })
    }
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "convex" => Ok(GenKind::Convex),
            "pseudoconvex" | "pseudo-convex" => Ok(GenKind::PseudoConvex),
            "ortho" | "orthoconvex" => Ok(GenKind::Orthoconvex),
            other => Err(format!("unknown polygon kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid vertex count {n} for {kind} polygons")]
    InvalidN { kind: GenKind, n: usize },
    #[error("reflex target {target} exceeds {max} for n = {n}")]
    InvalidReflexTarget { target: usize, max: usize, n: usize },
    #[error("coordinate span {0} outside 8..=2^30")]
    InvalidSpan(i64),
    #[error("gave up after {0} attempts")]
    GenerationFailed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenConfig {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
    /// Pseudo-convex only.
    pub reflex_target: Option<usize>,
    pub span: i64,
}

impl GenConfig {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GenConfig {
            kind,
            n,
            seed,
            reflex_target: None,
            span: DEFAULT_SPAN,
        }
    }

    pub fn with_reflex(mut self, r: usize) -> Self {
        self.reflex_target = Some(r);
        self
    }

    /// `#` comment line recorded at the top of generated polygon files.
    pub fn header(&self) -> String {
        let reflex = self
            .reflex_target
            .map_or_else(|| "-".to_string(), |r| r.to_string());
        format!(
            "# kind={} n={} seed={} reflex_target={} span={} rng={}",
            self.kind, self.n, self.seed, reflex, self.span, RNG_NAME
        )
    }
}

pub fn generate(cfg: &GenConfig) -> Result<Polygon, GenError> {
    match cfg.kind {
        GenKind::Convex => gen_convex(cfg),
        GenKind::PseudoConvex => gen_pseudo_convex(cfg),
        GenKind::Orthoconvex => gen_orthoconvex_staircase(cfg),
    }
}

fn check_span(span: i64) -> Result<(), GenError> {
    if !(8..=MAX_COORD).contains(&span) {
        return Err(GenError::InvalidSpan(span));
    }
    Ok(())
}

fn convex_attempt(rng: &mut ChaCha8Rng, n: usize, span: i64) -> Option<Polygon> {
    let r = span as f64 / 2.0;
    let mut angles: Vec<f64> = (0..n)
        .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
        .collect();
    angles.sort_by(f64::total_cmp);
    let pts: Vec<Point> = angles
        .iter()
        .map(|t| Point::new((r * t.cos()).round() as i64, (r * t.sin()).round() as i64))
        .collect();
    let poly = Polygon::new(pts).ok()?;
    poly.is_convex().then_some(poly)
}

/// Convex polygon with vertices at sorted random angles on a circle of
/// radius `span / 2`, rounded to the integer grid and resampled until
/// strictly convex.
pub fn gen_convex(cfg: &GenConfig) -> Result<Polygon, GenError> {
    if cfg.n < 3 {
        return Err(GenError::InvalidN {
            kind: GenKind::Convex,
            n: cfg.n,
        });
    }
    check_span(cfg.span)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(p) = convex_attempt(&mut rng, cfg.n, cfg.span) {
            return Ok(p);
        }
    }
    Err(GenError::GenerationFailed(MAX_ATTEMPTS))
}

/// Convex polygon with `reflex_target` pairwise non-adjacent vertices
/// pulled toward the centroid until they turn reflex.
///
/// Each pull moves the vertex by `span / 64` per step (at most 32 steps),
/// re-validating simplicity and pseudo-convexity after every step. Once a
/// vertex is reflex it may be pushed up to two further steps to vary the
/// depth of the notch.
pub fn gen_pseudo_convex(cfg: &GenConfig) -> Result<Polygon, GenError> {
    let n = cfg.n;
    if n < 6 {
        return Err(GenError::InvalidN {
            kind: GenKind::PseudoConvex,
            n,
        });
    }
    check_span(cfg.span)?;
    let target = cfg.reflex_target.unwrap_or(0);
    let max = n / 2 - 1;
    if target > max {
        return Err(GenError::InvalidReflexTarget { target, max, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let step = (cfg.span / 64).max(1) as f64;
    for _ in 0..MAX_ATTEMPTS {
        let Some(base) = convex_attempt(&mut rng, n, cfg.span) else {
            continue;
        };
        if target == 0 {
            return Ok(base);
        }
        let Some(chosen) = pick_non_adjacent(&mut rng, n, target) else {
            continue;
        };
        if let Some(p) = pull_inward(&mut rng, base, &chosen, step) {
            return Ok(p);
        }
    }
    Err(GenError::GenerationFailed(MAX_ATTEMPTS))
}

/// `k` pairwise non-adjacent indices on an `n`-cycle, sorted.
fn pick_non_adjacent(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Option<Vec<usize>> {
    for _ in 0..64 {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        for &i in &idx {
            if chosen.len() == k {
                break;
            }
            if chosen.iter().all(|&c| c != (i + 1) % n && i != (c + 1) % n) {
                chosen.push(i);
            }
        }
        if chosen.len() == k {
            chosen.sort_unstable();
            return Some(chosen);
        }
    }
    None
}

fn pull_inward(
    rng: &mut ChaCha8Rng,
    base: Polygon,
    chosen: &[usize],
    step: f64,
) -> Option<Polygon> {
    let n = base.len();
    let (sx, sy) = base
        .vertices()
        .iter()
        .fold((0i64, 0i64), |(x, y), p| (x + p.x, y + p.y));
    let (cx, cy) = (sx as f64 / n as f64, sy as f64 / n as f64);
    let mut verts = base.vertices().to_vec();
    let admissible = |v: &[Point], reflex_so_far: usize| -> Option<Polygon> {
        let p = Polygon::new(v.to_vec()).ok()?;
        (p.is_pseudo_convex() && p.reflex_vertices().len() == reflex_so_far).then_some(p)
    };
    for (done, &i) in chosen.iter().enumerate() {
        let start = verts[i];
        let (dx, dy) = (cx - start.x as f64, cy - start.y as f64);
        let len = (dx * dx + dy * dy).sqrt();
        if len < 1.0 {
            return None;
        }
        let at = |k: usize| {
            let t = step * k as f64 / len;
            Point::new(
                (start.x as f64 + dx * t).round() as i64,
                (start.y as f64 + dy * t).round() as i64,
            )
        };
        let mut reached = None;
        for k in 1..=MAX_STEPS {
            verts[i] = at(k);
            let Some(p) = Polygon::new(verts.clone()).ok() else {
                break;
            };
            if p.is_reflex(i) {
                if admissible(&verts, done + 1).is_some() {
                    reached = Some(k);
                }
                break;
            }
        }
        let k = reached?;
        let extra = rng.gen_range(0..=2usize);
        for e in 1..=extra {
            let before = verts[i];
            verts[i] = at(k + e);
            if admissible(&verts, done + 1).is_none() {
                verts[i] = before;
                break;
            }
        }
    }
    admissible(&verts, chosen.len())
}

/// Axis-parallel orthoconvex polygon with `(n - 4) / 2` reflex vertices.
///
/// Starts from a square of side `span` and cuts staircase notches into its
/// corners, one step (one reflex vertex) at a time in the order
/// bottom-left, bottom-right, top-right, top-left. Each corner's staircase
/// stays inside its own quadrant, which keeps every horizontal and vertical
/// cross-section a single segment. `n = 8` gives a T shape, `n = 12` a plus.
pub fn gen_orthoconvex_staircase(cfg: &GenConfig) -> Result<Polygon, GenError> {
    let n = cfg.n;
    if n < 8 || n % 2 == 1 {
        return Err(GenError::InvalidN {
            kind: GenKind::Orthoconvex,
            n,
        });
    }
    check_span(cfg.span)?;
    let reflex = (n - 4) / 2;
    let mut steps = [0usize; 4];
    for k in 0..reflex {
        steps[k % 4] += 1;
    }
    let side = cfg.span;
    let half = side / 2;
    if (reflex / 4 + 1) as i64 >= half {
        return Err(GenError::InvalidSpan(cfg.span));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut verts = Vec::with_capacity(n);
    for (corner, &k) in steps.iter().enumerate() {
        let local = staircase(&mut rng, k, half);
        for (x, y) in local {
            // Rotate by corner * 90 degrees, then move to the corner.
            let (rx, ry) = match corner {
                0 => (x, y),
                1 => (side - y, x),
                2 => (side - x, side - y),
                _ => (y, side - x),
            };
            verts.push(Point::new(rx - half, ry - half));
        }
    }
    Polygon::new(verts).map_err(|_| GenError::GenerationFailed(1))
}

/// Bottom-left staircase with `k` steps inside `[0, limit)^2`, listed in
/// counter-clockwise order (coming down the left side, leaving along the
/// bottom). Yields `2k + 1` vertices; the `k` inner corners are reflex.
fn staircase(rng: &mut ChaCha8Rng, k: usize, limit: i64) -> Vec<(i64, i64)> {
    if k == 0 {
        return vec![(0, 0)];
    }
    let mut xs = distinct_levels(rng, k, limit);
    xs.sort_unstable();
    let mut ys = distinct_levels(rng, k, limit);
    ys.sort_unstable_by(|a, b| b.cmp(a));
    // x_0 = 0 < x_1 < ... < x_k, y_1 > ... > y_k > y_(k+1) = 0
    let x = |i: usize| if i == 0 { 0 } else { xs[i - 1] };
    let y = |i: usize| if i == k + 1 { 0 } else { ys[i - 1] };
    let mut out = vec![(x(0), y(1))];
    for i in 1..=k {
        out.push((x(i), y(i)));
        out.push((x(i), y(i + 1)));
    }
    out
}

fn distinct_levels(rng: &mut ChaCha8Rng, k: usize, limit: i64) -> Vec<i64> {
    let mut levels: Vec<i64> = Vec::with_capacity(k);
    while levels.len() < k {
        let v = rng.gen_range(1..limit);
        if !levels.contains(&v) {
            levels.push(v);
        }
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_examples() {
        let p = gen_convex(&GenConfig::new(GenKind::Convex, 4, 1)).unwrap();
        assert!(p.is_convex());
        assert_eq!(p.len(), 4);
        let t = gen_convex(&GenConfig::new(GenKind::Convex, 3, 99)).unwrap();
        assert_eq!(t.len(), 3);
        assert!(matches!(
            gen_convex(&GenConfig::new(GenKind::Convex, 2, 0)),
            Err(GenError::InvalidN { n: 2, .. })
        ));
    }

    #[test]
    fn convex_is_deterministic() {
        let cfg = GenConfig::new(GenKind::Convex, 12, 42);
        assert_eq!(gen_convex(&cfg), gen_convex(&cfg));
        let other = GenConfig::new(GenKind::Convex, 12, 43);
        assert_ne!(gen_convex(&cfg), gen_convex(&other));
    }

    #[test]
    fn pseudo_convex_examples() {
        let cfg = GenConfig::new(GenKind::PseudoConvex, 8, 3).with_reflex(2);
        let p = gen_pseudo_convex(&cfg).unwrap();
        assert_eq!(p.reflex_vertices().len(), 2);
        assert!(p.u_turn_vertices().is_empty());

        let cfg = GenConfig::new(GenKind::PseudoConvex, 8, 3).with_reflex(0);
        assert!(gen_pseudo_convex(&cfg).unwrap().is_convex());

        let cfg = GenConfig::new(GenKind::PseudoConvex, 10, 9).with_reflex(4);
        let p = gen_pseudo_convex(&cfg).unwrap();
        assert_eq!(p.reflex_vertices().len(), 4);
        assert!(p.is_pseudo_convex());

        let cfg = GenConfig::new(GenKind::PseudoConvex, 10, 9).with_reflex(5);
        assert!(matches!(
            gen_pseudo_convex(&cfg),
            Err(GenError::InvalidReflexTarget { max: 4, .. })
        ));
    }

    #[test]
    fn orthoconvex_examples() {
        for (n, reflex) in [(8, 2), (10, 3), (12, 4), (16, 6), (20, 8), (30, 13)] {
            let p = gen_orthoconvex_staircase(&GenConfig::new(GenKind::Orthoconvex, n, 5)).unwrap();
            assert_eq!(p.len(), n);
            assert_eq!(p.reflex_vertices().len(), reflex, "n = {n}");
            assert!(p.is_pseudo_convex());
            for i in 0..n {
                let (a, b) = (p.vertex(i), p.vertex(p.next(i)));
                assert!(a.x == b.x || a.y == b.y);
            }
        }
        assert!(matches!(
            gen_orthoconvex_staircase(&GenConfig::new(GenKind::Orthoconvex, 9, 0)),
            Err(GenError::InvalidN { n: 9, .. })
        ));
        assert!(matches!(
            gen_orthoconvex_staircase(&GenConfig::new(GenKind::Orthoconvex, 6, 0)),
            Err(GenError::InvalidN { n: 6, .. })
        ));
    }

    #[test]
    fn t_shape_for_eight() {
        let p = gen_orthoconvex_staircase(&GenConfig::new(GenKind::Orthoconvex, 8, 1)).unwrap();
        // Two notches, both on the bottom side.
        let reflex = p.reflex_vertices();
        let min_y = p.vertices().iter().map(|v| v.y).min().unwrap();
        let bottom: Vec<_> = p.vertices().iter().filter(|v| v.y == min_y).collect();
        assert_eq!(reflex.len(), 2);
        assert_eq!(bottom.len(), 2);
    }

    #[test]
    fn header_records_config() {
        let cfg = GenConfig::new(GenKind::PseudoConvex, 10, 7).with_reflex(3);
        assert_eq!(
            cfg.header(),
            "# kind=pseudoconvex n=10 seed=7 reflex_target=3 span=1000000 rng=ChaCha8Rng::seed_from_u64"
        );
    }
}
