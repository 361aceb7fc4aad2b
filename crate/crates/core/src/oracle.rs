//! Exhaustive search for the largest embeddable path, cycle and clique.
//!
//! Exponential, so only for small polygons. Results are the ground truth
//! that the closed-form constructions and the greedy are measured against.
//!
//! The search works on the chord graph (interior chords only). Two chords
//! conflict when they cross or overlap; a planar drawing is a chord set
//! with no conflicting pair. Conflicts are precomputed as bitsets.

use crate::embedding::{Embedding, GraphKind};
use crate::polygon::Polygon;
use crate::verify::edge_conflict;
use crate::visibility::VisibilityGraph;
use serde::Serialize;
use thiserror::Error;

/// Default vertex cap for path and cycle searches.
pub const DEFAULT_CAP: usize = 16;
/// Default vertex cap for clique searches.
pub const DEFAULT_CLIQUE_CAP: usize = 20;
/// Hard limit imposed by the 64-bit vertex masks.
pub const MAX_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("polygon has {n} vertices, search cap is {cap}")]
    PolygonTooLarge { n: usize, cap: usize },
    #[error("required vertex {index} out of range for {n} vertices")]
    RequiredOutOfRange { index: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    /// Edge count for paths and cycles, node count for cliques.
    pub size: usize,
    /// Lexicographically smallest optimal vertex sequence, as an embedding.
    #[serde(skip)]
    pub witness: Embedding,
    /// Vertex sequence of the witness.
    pub witness_vertices: Vec<usize>,
    /// Search-tree nodes visited.
    pub explored: u64,
    pub cap_respected: bool,
}

struct ChordTable {
    n: usize,
    /// `id[i * n + j]` is the chord index of `(i, j)`, or `usize::MAX`.
    id: Vec<usize>,
    /// Per-vertex chord partners, ascending.
    partners: Vec<Vec<usize>>,
    /// Per-chord bitset of conflicting chords.
    conflicts: Vec<Vec<u64>>,
    words: usize,
}

impl ChordTable {
    fn new(poly: &Polygon) -> Self {
        let n = poly.len();
        let vis = VisibilityGraph::new(poly);
        let chords = vis.chords();
        let mut id = vec![usize::MAX; n * n];
        for (k, &(i, j)) in chords.iter().enumerate() {
            id[i * n + j] = k;
            id[j * n + i] = k;
        }
        let partners = (0..n).map(|i| vis.chord_partners(i)).collect();
        let words = chords.len().div_ceil(64).max(1);
        let segs: Vec<_> = chords
            .iter()
            .map(|&(i, j)| crate::geom::Segment::new(poly.vertex(i), poly.vertex(j)))
            .collect();
        let mut conflicts = vec![vec![0u64; words]; chords.len()];
        for a in 0..chords.len() {
            for b in a + 1..chords.len() {
                if edge_conflict(segs[a], segs[b]).is_some() {
                    conflicts[a][b / 64] |= 1 << (b % 64);
                    conflicts[b][a / 64] |= 1 << (a % 64);
                }
            }
        }
        ChordTable {
            n,
            id,
            partners,
            conflicts,
            words,
        }
    }

    fn chord(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.id[i * self.n + j];
        (k != usize::MAX).then_some(k)
    }
}

fn blocked(mask: &[u64], chord: usize) -> bool {
    mask[chord / 64] >> (chord % 64) & 1 == 1
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    let cap = cap.min(MAX_CAP);
    if n > cap {
        Err(OracleError::PolygonTooLarge { n, cap })
    } else {
        Ok(())
    }
}

struct WalkSearch<'a> {
    t: &'a ChordTable,
    closed: bool,
    required: u64,
    /// Stack of blocked-chord masks, one frame per depth.
    masks: Vec<Vec<u64>>,
    seq: Vec<usize>,
    used: u64,
    best: Vec<usize>,
    best_size: usize,
    explored: u64,
}

impl WalkSearch<'_> {
    fn size_of(&self, seq_len: usize) -> usize {
        if self.closed {
            seq_len
        } else {
            seq_len - 1
        }
    }

    fn run(&mut self, start: usize, allowed: u64) {
        self.seq.clear();
        self.seq.push(start);
        self.used = 1 << start;
        self.masks.truncate(1);
        self.dfs(allowed);
    }

    fn dfs(&mut self, allowed: u64) {
        self.explored += 1;
        let t = self.t;
        let last = *self.seq.last().unwrap();
        let depth = self.seq.len();
        let remaining = (allowed & !self.used).count_ones() as usize;
        // Even using every remaining vertex cannot beat the incumbent.
        if self.size_of(depth + remaining) <= self.best_size {
            return;
        }
        if self.closed {
            let start = self.seq[0];
            if depth >= 3 && self.seq[1] < last && self.used & self.required == self.required {
                if let Some(c) = t.chord(last, start) {
                    if !blocked(&self.masks[depth - 1], c) && depth > self.best_size {
                        self.best_size = depth;
                        self.best = self.seq.clone();
                    }
                }
            }
        } else if depth >= 2 && depth - 1 > self.best_size {
            self.best_size = depth - 1;
            self.best = self.seq.clone();
        }
        for &w in &t.partners[last] {
            if self.used >> w & 1 == 1 || allowed >> w & 1 == 0 {
                continue;
            }
            let c = t.chord(last, w).unwrap();
            if blocked(&self.masks[depth - 1], c) {
                continue;
            }
            let mut next = self.masks[depth - 1].clone();
            for (m, x) in next.iter_mut().zip(&t.conflicts[c]) {
                *m |= x;
            }
            self.masks.push(next);
            self.seq.push(w);
            self.used |= 1 << w;
            self.dfs(allowed);
            self.used &= !(1 << w);
            self.seq.pop();
            self.masks.pop();
        }
    }
}

fn walk_search(poly: &Polygon, closed: bool, required: u64) -> OracleResult {
    let t = ChordTable::new(poly);
    let n = poly.len();
    let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = WalkSearch {
        t: &t,
        closed,
        required,
        masks: vec![vec![0; t.words]],
        seq: Vec::new(),
        used: 0,
        best: Vec::new(),
        best_size: 0,
        explored: 0,
    };
    let last_start = if required == 0 {
        n
    } else {
        required.trailing_zeros() as usize + 1
    };
    for start in 0..last_start.min(n) {
        // Cycles start at their smallest vertex.
        let allowed = if closed {
            all & !((1u64 << start) - 1)
        } else {
            all
        };
        s.run(start, allowed);
    }
    let kind = if closed {
        GraphKind::Cycle
    } else {
        GraphKind::Path
    };
    finish(kind, s.best_size, s.best, s.explored)
}

fn finish(kind: GraphKind, size: usize, best: Vec<usize>, explored: u64) -> OracleResult {
    let mut witness = match kind {
        _ if size == 0 => Embedding::empty(kind),
        GraphKind::Clique => Embedding::clique(&best),
        _ => Embedding::from_walk(kind, &best),
    };
    witness.meta.optimal_claimed = size > 0;
    OracleResult {
        size,
        witness_vertices: if size == 0 { Vec::new() } else { best },
        witness,
        explored,
        cap_respected: true,
    }
}

/// Largest planar cycle of interior chords.
pub fn oracle_max_cycle(poly: &Polygon, cap: usize) -> Result<OracleResult, OracleError> {
    check_cap(poly.len(), cap)?;
    Ok(walk_search(poly, true, 0))
}

/// Largest planar cycle that passes through every vertex in `required`.
pub fn oracle_max_cycle_containing(
    poly: &Polygon,
    required: &[usize],
    cap: usize,
) -> Result<OracleResult, OracleError> {
    let n = poly.len();
    check_cap(n, cap)?;
    let mut mask = 0u64;
    for &r in required {
        if r >= n {
            return Err(OracleError::RequiredOutOfRange { index: r, n });
        }
        mask |= 1 << r;
    }
    Ok(walk_search(poly, true, mask))
}

/// Largest planar path of interior chords, by edge count.
pub fn oracle_max_path(poly: &Polygon, cap: usize) -> Result<OracleResult, OracleError> {
    check_cap(poly.len(), cap)?;
    Ok(walk_search(poly, false, 0))
}

/// Largest vertex set whose members are pairwise joined by interior chords.
/// Crossings between clique edges are allowed.
pub fn oracle_max_clique(poly: &Polygon, cap: usize) -> Result<OracleResult, OracleError> {
    let n = poly.len();
    check_cap(n, cap)?;
    let vis = VisibilityGraph::new(poly);
    let adj: Vec<u64> = (0..n)
        .map(|i| vis.chord_partners(i).iter().fold(0u64, |m, &j| m | 1 << j))
        .collect();
    struct Clique<'a> {
        adj: &'a [u64],
        set: Vec<usize>,
        best: Vec<usize>,
        explored: u64,
    }
    impl Clique<'_> {
        fn dfs(&mut self, cand: u64) {
            self.explored += 1;
            if self.set.len() > self.best.len() {
                self.best = self.set.clone();
            }
            if self.set.len() + cand.count_ones() as usize <= self.best.len() {
                return;
            }
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.set.len() + 1 + (rest.count_ones() as usize) <= self.best.len() {
                    return;
                }
                self.set.push(v);
                self.dfs(rest & self.adj[v]);
                self.set.pop();
            }
        }
    }
    let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut c = Clique {
        adj: &adj,
        set: Vec::new(),
        best: Vec::new(),
        explored: 0,
    };
    c.dfs(all);
    let size = if c.best.len() >= 2 { c.best.len() } else { 0 };
    Ok(finish(GraphKind::Clique, size, c.best, c.explored))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::polygon::fixtures::*;
    use crate::verify::verify_embedding;

    fn regular(n: usize) -> Polygon {
        let r = 1_000_000.0;
        let pts = (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                Point::new((r * t.cos()).round() as i64, (r * t.sin()).round() as i64)
            })
            .collect();
        Polygon::new(pts).unwrap()
    }

    fn witness_ok(p: &Polygon, r: &OracleResult, planar: bool) {
        if r.size > 0 {
            assert_eq!(
                verify_embedding(p, &r.witness, r.witness.spec(), planar),
                Ok(())
            );
        } else {
            assert!(r.witness.edges.is_empty());
        }
    }

    #[test]
    fn cycle_examples() {
        let r = oracle_max_cycle(&h6(), DEFAULT_CAP).unwrap();
        assert_eq!(r.size, 3);
        assert_eq!(r.witness_vertices, vec![0, 2, 4]);
        witness_ok(&h6(), &r, true);
        let r = oracle_max_cycle(&t8(), DEFAULT_CAP).unwrap();
        assert_eq!(r.size, 3);
        assert_eq!(r.witness_vertices, vec![1, 4, 6]);
        witness_ok(&t8(), &r, true);
        assert_eq!(oracle_max_cycle(&l6(), DEFAULT_CAP).unwrap().size, 0);
    }

    #[test]
    fn path_examples() {
        let r = oracle_max_path(&regular(7), DEFAULT_CAP).unwrap();
        assert_eq!(r.size, 4);
        witness_ok(&regular(7), &r, true);
        assert_eq!(oracle_max_path(&square(), DEFAULT_CAP).unwrap().size, 1);
        let r = oracle_max_path(&l6(), DEFAULT_CAP).unwrap();
        assert_eq!(r.size, 3);
        witness_ok(&l6(), &r, true);
    }

    #[test]
    fn clique_examples() {
        let r = oracle_max_clique(&h6(), DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(r.size, 3);
        witness_ok(&h6(), &r, false);
        assert_eq!(
            oracle_max_clique(&regular(8), DEFAULT_CLIQUE_CAP)
                .unwrap()
                .size,
            4
        );
        let r = oracle_max_clique(&l6(), DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(r.witness_vertices, vec![0, 2]);
    }

    #[test]
    fn containing_examples() {
        assert_eq!(
            oracle_max_cycle_containing(&t8(), &[1, 4], DEFAULT_CAP)
                .unwrap()
                .size,
            3
        );
        assert_eq!(
            oracle_max_cycle_containing(&h6(), &[], DEFAULT_CAP)
                .unwrap()
                .size,
            3
        );
        assert_eq!(
            oracle_max_cycle_containing(&l6(), &[3], DEFAULT_CAP)
                .unwrap()
                .size,
            0
        );
        assert!(matches!(
            oracle_max_cycle_containing(&l6(), &[7], DEFAULT_CAP),
            Err(OracleError::RequiredOutOfRange { index: 7, n: 6 })
        ));
        // Requiring vertex 5 of a hexagon forces the odd triangle.
        let r = oracle_max_cycle_containing(&h6(), &[5], DEFAULT_CAP).unwrap();
        assert_eq!(r.witness_vertices, vec![1, 3, 5]);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            oracle_max_cycle(&regular(17), DEFAULT_CAP),
            Err(OracleError::PolygonTooLarge { n: 17, cap: 16 })
        );
        assert!(oracle_max_clique(&regular(17), DEFAULT_CLIQUE_CAP).is_ok());
    }

    #[test]
    fn triangle_embeds_nothing() {
        let tri = Polygon::new(vec![Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)]).unwrap();
        for r in [
            oracle_max_path(&tri, 16).unwrap(),
            oracle_max_cycle(&tri, 16).unwrap(),
            oracle_max_clique(&tri, 16).unwrap(),
        ] {
            assert_eq!(r.size, 0);
            assert!(r.witness_vertices.is_empty());
        }
    }
}
