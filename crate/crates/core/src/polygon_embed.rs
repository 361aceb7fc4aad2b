//! Constructive polygon embeddings.
//!
//! Convex polygons get the closed-form path, cycle and clique layouts.
//! Pseudo-convex polygons get a greedy maximum-cycle construction that
//! keeps every usable reflex vertex and is checked by [`crate::verify`].

use crate::embedding::{Embedding, GraphKind, GraphSpec};
use crate::polygon::Polygon;
use crate::verify::{verify_embedding, Violation};
use crate::visibility::VisibilityGraph;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("polygon is not convex")]
    NotConvex,
    #[error("polygon is not pseudo-convex (it has u-turn vertices)")]
    NotPseudoConvex,
    #[error("requested size {requested} outside the admissible range {min}..={max}")]
    SizeOutOfRange {
        requested: usize,
        min: usize,
        max: usize,
    },
    #[error("a cycle needs at least 3 edges, got {0}")]
    DegenerateCycle(usize),
    #[error("polygon has {n} vertices, need at least {min}")]
    TooSmall { n: usize, min: usize },
    #[error("no cycle can be embedded")]
    NoCycle,
}

/// Path with exactly `m` chords in a convex polygon.
///
/// Walk `n-1 -> m`, then zig-zag `m -> 0 -> m-1 -> 1 -> ...`
/// inside the index range `0..=m`, stopping once `m` edges are placed.
pub fn embed_path_convex(poly: &Polygon, m: usize) -> Result<Embedding, EmbedError> {
    let n = poly.len();
    if !poly.is_convex() {
        return Err(EmbedError::NotConvex);
    }
    if n < 4 {
        return Err(EmbedError::TooSmall { n, min: 4 });
    }
    if m < 1 || m > n - 3 {
        return Err(EmbedError::SizeOutOfRange {
            requested: m,
            min: 1,
            max: n - 3,
        });
    }
    let mut walk = Vec::with_capacity(m + 1);
    walk.push(n - 1);
    let (mut lo, mut hi) = (0usize, m);
    let mut at_high = true;
    walk.push(hi);
    while walk.len() < m + 1 {
        if at_high {
            walk.push(lo);
            hi -= 1;
        } else {
            walk.push(hi);
            lo += 1;
        }
        at_high = !at_high;
    }
    let mut emb = Embedding::from_walk(GraphKind::Path, &walk);
    emb.meta.optimal_claimed = m == n - 3;
    Ok(emb)
}

/// Cycle on vertices `0, 2, ..., 2(k-1)` of a convex polygon.
pub fn embed_cycle_convex(poly: &Polygon, k: usize) -> Result<Embedding, EmbedError> {
    let n = poly.len();
    if !poly.is_convex() {
        return Err(EmbedError::NotConvex);
    }
    if k < 3 {
        return Err(EmbedError::DegenerateCycle(k));
    }
    if k > n / 2 {
        return Err(EmbedError::SizeOutOfRange {
            requested: k,
            min: 3,
            max: n / 2,
        });
    }
    let walk: Vec<usize> = (0..k).map(|i| 2 * i).collect();
    let mut emb = Embedding::from_walk(GraphKind::Cycle, &walk);
    emb.meta.optimal_claimed = k == n / 2;
    Ok(emb)
}

/// `K_(n/2)` on the even-indexed vertices of a convex polygon. Graph edges
/// cross each other; only crossings with the boundary are excluded.
pub fn embed_clique_convex(poly: &Polygon) -> Result<Embedding, EmbedError> {
    let n = poly.len();
    if !poly.is_convex() {
        return Err(EmbedError::NotConvex);
    }
    if n < 4 {
        return Err(EmbedError::TooSmall { n, min: 4 });
    }
    let verts: Vec<usize> = (0..n / 2).map(|i| 2 * i).collect();
    let mut emb = Embedding::clique(&verts);
    emb.meta.optimal_claimed = true;
    Ok(emb)
}

/// A stretch of boundary between two consecutive anchor (kept reflex)
/// vertices, or the whole boundary when there are no anchors.
#[derive(Debug, Clone)]
struct Run {
    /// Candidate vertices in CCW order; neighbors of anchors already removed.
    slots: Vec<usize>,
    /// Whole-boundary run: first and last picks must not be neighbors.
    cyclic: bool,
    flipped: bool,
}

struct Greedy<'a> {
    poly: &'a Polygon,
    isolated: Vec<bool>,
    dropped: BTreeSet<usize>,
    diagnostics: Vec<String>,
}

impl Greedy<'_> {
    fn anchors(&self) -> Vec<usize> {
        (0..self.poly.len())
            .filter(|&v| self.poly.is_reflex(v) && !self.isolated[v] && !self.dropped.contains(&v))
            .collect()
    }

    fn runs(&self, anchors: &[usize]) -> Vec<Run> {
        let n = self.poly.len();
        if anchors.is_empty() {
            return vec![Run {
                slots: (0..n).collect(),
                cyclic: true,
                flipped: false,
            }];
        }
        (0..anchors.len())
            .map(|k| {
                let from = anchors[k];
                let to = anchors[(k + 1) % anchors.len()];
                let gap = (to + n - from) % n;
                let gap = if gap == 0 { n } else { gap };
                // Skip the anchors' own neighbors.
                let slots = (2..gap.saturating_sub(1)).map(|d| (from + d) % n).collect();
                Run {
                    slots,
                    cyclic: false,
                    flipped: false,
                }
            })
            .collect()
    }

    fn pick(&self, run: &Run) -> Vec<usize> {
        let n = self.poly.len();
        let mut picked: Vec<usize> = Vec::new();
        let start = usize::from(run.flipped);
        for (pos, &v) in run.slots.iter().enumerate().skip(start) {
            if self.isolated[v] || self.dropped.contains(&v) {
                continue;
            }
            if let Some(&last) = picked.last() {
                if (last + 1) % n == v {
                    continue;
                }
            }
            if run.cyclic && pos + 1 == run.slots.len() {
                if let Some(&first) = picked.first() {
                    if (v + 1) % n == first {
                        continue;
                    }
                }
            }
            picked.push(v);
        }
        picked
    }

    fn candidate(&self, anchors: &[usize], runs: &[Run]) -> Vec<usize> {
        let mut cycle = Vec::new();
        if anchors.is_empty() {
            return self.pick(&runs[0]);
        }
        for (k, &a) in anchors.iter().enumerate() {
            cycle.push(a);
            cycle.extend(self.pick(&runs[k]));
        }
        cycle
    }
}

fn first_bad_pair(v: &[Violation]) -> Option<(usize, usize)> {
    v.iter()
        .find(|v| v.indices.len() >= 2)
        .map(|v| (v.indices[0], v.indices[1]))
}

/// Maximum-cycle construction for pseudo-convex polygons.
///
/// Every non-isolated reflex vertex is kept as an anchor; the convex
/// stretches between anchors are filled greedily with alternating
/// non-isolated vertices. A chord that fails verification is repaired by
/// first shifting the parity of the offending stretch, then dropping the
/// smaller-indexed convex endpoint (or, between two anchors, the smaller
/// anchor, with a diagnostic). The returned cycle always passes planar
/// verification.
pub fn embed_max_cycle_pseudo_convex(poly: &Polygon) -> Result<Embedding, EmbedError> {
    let n = poly.len();
    if !poly.is_pseudo_convex() {
        return Err(EmbedError::NotPseudoConvex);
    }
    if n < 6 {
        return Err(EmbedError::NoCycle);
    }
    let vis = VisibilityGraph::new(poly);
    let mut g = Greedy {
        poly,
        isolated: vis.isolated(),
        dropped: BTreeSet::new(),
        diagnostics: Vec::new(),
    };
    for v in poly.reflex_vertices() {
        if g.isolated[v] {
            g.diagnostics
                .push(format!("reflex vertex {v} skipped: isolated"));
        }
    }

    let mut anchors = g.anchors();
    let mut runs = g.runs(&anchors);
    loop {
        let cycle = g.candidate(&anchors, &runs);
        if cycle.len() < 3 {
            return Err(EmbedError::NoCycle);
        }
        let emb = Embedding::from_walk(GraphKind::Cycle, &cycle);
        let violations = match verify_embedding(poly, &emb, GraphSpec::cycle(cycle.len()), true) {
            Ok(()) => {
                let mut emb = emb;
                emb.meta.optimal_claimed = cycle.len() == n / 2;
                emb.meta.diagnostics = g.diagnostics;
                return Ok(emb);
            }
            Err(v) => v,
        };
        let (a, b) = first_bad_pair(&violations).ok_or(EmbedError::NoCycle)?;
        let owner = |v: usize| runs.iter().position(|r| r.slots.contains(&v));
        let convex: Vec<usize> = [a, b]
            .into_iter()
            .filter(|v| !anchors.contains(v))
            .collect();

        // Parity shift on the first unflipped stretch owning an endpoint.
        if let Some(r) = convex
            .iter()
            .filter_map(|&v| owner(v))
            .find(|&r| !runs[r].flipped)
        {
            runs[r].flipped = true;
            continue;
        }
        let victim = match convex.iter().min() {
            Some(&v) => v,
            None => {
                let v = a.min(b);
                g.diagnostics.push(format!(
                    "reflex vertex {v} skipped: chord ({a}, {b}) unusable"
                ));
                v
            }
        };
        g.dropped.insert(victim);
        if anchors.contains(&victim) {
            // Anchor set changed: rebuild stretches, keeping flip state
            // for stretches that survive unchanged.
            let old = std::mem::take(&mut runs);
            anchors = g.anchors();
            runs = g.runs(&anchors);
            for r in runs.iter_mut() {
                if let Some(o) = old.iter().find(|o| o.slots == r.slots) {
                    r.flipped = o.flipped;
                }
            }
        }
    }
}

/// Marks `emb` optimal if the exhaustive search agrees with its size.
pub fn audit_with_oracle(poly: &Polygon, emb: &mut Embedding, cap: usize) -> Option<usize> {
    let best = crate::oracle::oracle_max_cycle(poly, cap).ok()?;
    if best.size == emb.size() {
        emb.meta.optimal_claimed = true;
    } else {
        emb.meta.optimal_claimed = false;
        emb.meta.diagnostics.push(format!(
            "exhaustive search finds a cycle of {} edges, greedy found {}",
            best.size,
            emb.size()
        ));
    }
    Some(best.size)
}
