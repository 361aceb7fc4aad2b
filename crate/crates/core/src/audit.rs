//! Greedy-versus-exhaustive comparison on generated pseudo-convex polygons.
//!
//! Each trial draws `(n, reflex_target, polygon seed)` from a master
//! ChaCha8 stream, generates the polygon, and records:
//! - the greedy maximum cycle and whether it verifies,
//! - the exhaustive maximum cycle, with and without the constraint that
//!   every reflex vertex lies on it,
//! - window checks on the exhaustive witness and the greedy cycle (every
//!   three consecutive non-isolated vertices hold one or two cycle vertices),
//! - any isolated vertex used by a witness.
//!
//! Any trial that trips one of these checks, or whose maximum cycle
//! exceeds `n / 2` edges, is kept as a counterexample.

use crate::embedding::GraphSpec;
use crate::generate::{gen_pseudo_convex, GenConfig, GenKind};
use crate::io::format_points;
use crate::oracle::{oracle_max_cycle, oracle_max_cycle_containing, OracleError, OracleResult};
use crate::polygon::Polygon;
use crate::polygon_embed::embed_max_cycle_pseudo_convex;
use crate::verify::verify_embedding;
use crate::visibility::VisibilityGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompareConfig {
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub cap: usize,
}

/// Per-trial generation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialSpec {
    pub n: usize,
    pub reflex_target: usize,
    pub seed: u64,
}

/// Draws the trial parameters: `n` uniform in `n_min..=n_max`, reflex
/// target uniform in `1..=max(1, n/2 - 2)`.
pub fn trial_specs(cfg: &CompareConfig) -> Vec<TrialSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.trials)
        .map(|_| {
            let n = rng.gen_range(cfg.n_min..=cfg.n_max);
            let hi = (n / 2).saturating_sub(2).max(1);
            let reflex_target = rng.gen_range(1..=hi);
            let seed = rng.gen::<u64>();
            TrialSpec {
                n,
                reflex_target,
                seed,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    /// Windows of three consecutive non-isolated vertices.
    pub windows: usize,
    /// Windows with no cycle vertex.
    pub empty: usize,
    /// Windows with all three vertices on the cycle.
    pub full: usize,
}

/// Window check of a cycle witness against three-consecutive-vertex
/// windows of non-isolated polygon vertices.
pub fn window_report(poly: &Polygon, isolated: &[bool], cycle: &[usize]) -> WindowReport {
    let n = poly.len();
    let mut on = vec![false; n];
    for &v in cycle {
        on[v] = true;
    }
    let mut r = WindowReport::default();
    for j in 0..n {
        let w = [poly.prev(j), j, poly.next(j)];
        if w.iter().any(|&v| isolated[v]) {
            continue;
        }
        r.windows += 1;
        match w.iter().filter(|&&v| on[v]).count() {
            0 => r.empty += 1,
            3 => r.full += 1,
            _ => {}
        }
    }
    r
}

/// Isolated vertices appearing in a cycle witness, split by which clause
/// of the isolation rule applies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IsolationReport {
    /// Vertices with fewer than five visible vertices.
    pub few_visible: Vec<usize>,
    /// Vertices with exactly five visible vertices whose two chord partners
    /// are polygon neighbors.
    pub adjacent_partners: Vec<usize>,
}

pub fn isolation_report(vis: &VisibilityGraph, cycle: &[usize]) -> IsolationReport {
    let iso = vis.isolated();
    let mut r = IsolationReport::default();
    for &v in cycle {
        if !iso[v] {
            continue;
        }
        if vis.visible_set(v).len() < 5 {
            r.few_visible.push(v);
        } else {
            r.adjacent_partners.push(v);
        }
    }
    r
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub n: usize,
    pub seed: u64,
    pub reflex_target: usize,
    pub reflex: Vec<usize>,
    pub isolated: Vec<usize>,
    /// `None` when the greedy reported that no cycle exists.
    pub greedy_size: Option<usize>,
    pub greedy_cycle: Vec<usize>,
    pub greedy_valid: bool,
    pub greedy_keeps_all_reflex: bool,
    pub oracle_size: usize,
    pub oracle_cycle: Vec<usize>,
    pub oracle_with_reflex_size: usize,
    pub oracle_with_reflex_cycle: Vec<usize>,
    pub reflex_optimum_holds: bool,
    pub greedy_matches_oracle: bool,
    /// Greedy size over oracle size (1 when both are zero).
    pub ratio: f64,
    /// Window check on the exhaustive witness.
    pub windows: WindowReport,
    /// Window check on the greedy cycle.
    pub greedy_windows: WindowReport,
    /// Isolated vertices on either exhaustive witness.
    pub witness_isolation: IsolationReport,
    pub oracle_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub file: String,
    pub reason: String,
    pub n: usize,
    pub seed: u64,
    pub reflex_target: usize,
    #[serde(skip)]
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub trials: usize,
    pub greedy_valid: usize,
    pub greedy_optimal: usize,
    pub greedy_exceeds_oracle: usize,
    pub mean_ratio: f64,
    pub reflex_optimum_holds: usize,
    pub window_empty: usize,
    pub window_full: usize,
    pub greedy_window_empty: usize,
    pub greedy_window_full: usize,
    /// Trials whose maximum cycle has more than `n / 2` edges.
    pub cycle_bound_exceeded: usize,
    pub witnesses_with_few_visible: usize,
    pub witnesses_with_adjacent_partners: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub config: CompareConfig,
    pub isolation_rule: &'static str,
    pub rows: Vec<TrialRow>,
    pub summary: Summary,
    pub counterexamples: Vec<Counterexample>,
}

/// Runs one trial on an already generated polygon.
pub fn run_trial(poly: &Polygon, spec: TrialSpec, cap: usize) -> Result<TrialRow, OracleError> {
    let vis = VisibilityGraph::new(poly);
    let iso = vis.isolated();
    let reflex = poly.reflex_vertices();
    let greedy = embed_max_cycle_pseudo_convex(poly).ok();
    let greedy_valid = greedy
        .as_ref()
        .is_none_or(|e| verify_embedding(poly, e, GraphSpec::cycle(e.size()), true).is_ok());
    let best: OracleResult = oracle_max_cycle(poly, cap)?;
    let with_reflex = oracle_max_cycle_containing(poly, &reflex, cap)?;
    let g = greedy.as_ref().map_or(0, |e| e.size());
    let ratio = if best.size == 0 {
        1.0
    } else {
        g as f64 / best.size as f64
    };
    let greedy_cycle = greedy
        .as_ref()
        .map(|e| e.mapping.clone())
        .unwrap_or_default();
    Ok(TrialRow {
        n: spec.n,
        seed: spec.seed,
        reflex_target: spec.reflex_target,
        greedy_keeps_all_reflex: greedy.is_some()
            && reflex.iter().all(|r| greedy_cycle.contains(r)),
        isolated: vis.isolated_vertices(),
        greedy_size: greedy.as_ref().map(|e| e.size()),
        greedy_cycle,
        greedy_valid,
        oracle_size: best.size,
        oracle_with_reflex_size: with_reflex.size,
        reflex_optimum_holds: with_reflex.size == best.size,
        greedy_matches_oracle: g == best.size,
        ratio,
        windows: if best.size > 0 {
            window_report(poly, &iso, &best.witness_vertices)
        } else {
            WindowReport::default()
        },
        greedy_windows: match &greedy {
            Some(e) => window_report(poly, &iso, &e.mapping),
            None => WindowReport::default(),
        },
        witness_isolation: {
            let mut both = best.witness_vertices.clone();
            both.extend(
                with_reflex
                    .witness_vertices
                    .iter()
                    .filter(|v| !best.witness_vertices.contains(v)),
            );
            isolation_report(&vis, &both)
        },
        oracle_with_reflex_cycle: with_reflex.witness_vertices,
        oracle_cycle: best.witness_vertices,
        oracle_explored: best.explored + with_reflex.explored,
        reflex,
    })
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Runs every trial of `cfg`. Rows are ordered by `(n, seed)`.
pub fn compare(cfg: &CompareConfig) -> Result<RunReport, OracleError> {
    let mut rows = Vec::with_capacity(cfg.trials);
    let mut counterexamples = Vec::new();
    for spec in trial_specs(cfg) {
        let gen = GenConfig::new(GenKind::PseudoConvex, spec.n, spec.seed)
            .with_reflex(spec.reflex_target);
        let poly = match gen_pseudo_convex(&gen) {
            Ok(p) => p,
            Err(e) => {
                counterexamples.push(Counterexample {
                    file: format!("gen-failure-n{}-s{}.txt", spec.n, spec.seed),
                    reason: format!("generation failed: {e}"),
                    n: spec.n,
                    seed: spec.seed,
                    reflex_target: spec.reflex_target,
                    text: format!("{}\n# {e}\n", gen.header()),
                });
                continue;
            }
        };
        let row = run_trial(&poly, spec, cfg.cap)?;
        let mut reasons = Vec::new();
        if !row.greedy_valid {
            reasons.push("greedy output fails verification".to_string());
        }
        if !row.greedy_matches_oracle {
            reasons.push(format!(
                "greedy {} vs exhaustive {}",
                row.greedy_size.unwrap_or(0),
                row.oracle_size
            ));
        }
        if !row.reflex_optimum_holds {
            reasons.push(format!(
                "no optimal cycle through all reflex vertices ({} vs {})",
                row.oracle_with_reflex_size, row.oracle_size
            ));
        }
        if row.windows.empty > 0 || row.windows.full > 0 {
            reasons.push(format!(
                "witness window check: {} empty, {} full",
                row.windows.empty, row.windows.full
            ));
        }
        if row.greedy_windows.empty > 0 || row.greedy_windows.full > 0 {
            reasons.push(format!(
                "greedy window check: {} empty, {} full",
                row.greedy_windows.empty, row.greedy_windows.full
            ));
        }
        if row.oracle_size > spec.n / 2 {
            reasons.push(format!(
                "maximum cycle {} exceeds n/2 = {}",
                row.oracle_size,
                spec.n / 2
            ));
        }
        if !reasons.is_empty() {
            let mut header = vec![gen.header()];
            header.extend(reasons.iter().map(|r| format!("# {r}")));
            counterexamples.push(Counterexample {
                file: format!("n{}-s{}.poly", spec.n, spec.seed),
                reason: reasons.join("; "),
                n: spec.n,
                seed: spec.seed,
                reflex_target: spec.reflex_target,
                text: format_points(poly.vertices(), &header),
            });
        }
        rows.push(row);
    }
    rows.sort_by_key(|r| (r.n, r.seed));
    counterexamples.sort_by_key(|c| (c.n, c.seed));
    let count = |f: &dyn Fn(&TrialRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let summary = Summary {
        trials: rows.len(),
        greedy_valid: count(&|r| r.greedy_valid),
        greedy_optimal: count(&|r| r.greedy_matches_oracle),
        greedy_exceeds_oracle: count(&|r| r.greedy_size.unwrap_or(0) > r.oracle_size),
        mean_ratio: if rows.is_empty() {
            1.0
        } else {
            rows.iter().map(|r| r.ratio).sum::<f64>() / rows.len() as f64
        },
        reflex_optimum_holds: count(&|r| r.reflex_optimum_holds),
        window_empty: rows.iter().map(|r| r.windows.empty).sum(),
        window_full: rows.iter().map(|r| r.windows.full).sum(),
        greedy_window_empty: rows.iter().map(|r| r.greedy_windows.empty).sum(),
        greedy_window_full: rows.iter().map(|r| r.greedy_windows.full).sum(),
        cycle_bound_exceeded: count(&|r| r.oracle_size > r.n / 2),
        witnesses_with_few_visible: count(&|r| !r.witness_isolation.few_visible.is_empty()),
        witnesses_with_adjacent_partners: count(&|r| {
            !r.witness_isolation.adjacent_partners.is_empty()
        }),
    };
    let command = format!(
        "compare --trials {} --n-range {}:{} --seed {} --cap {}",
        cfg.trials, cfg.n_min, cfg.n_max, cfg.seed, cfg.cap
    );
    Ok(RunReport {
        input_digest: digest(&command),
        command,
        config: *cfg,
        isolation_rule: crate::visibility::ISOLATION_RULE,
        rows,
        summary,
        counterexamples,
    })
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Directory name derived from the run parameters, so reruns land in
    /// the same place.
    pub fn stamp(&self) -> String {
        format!(
            "compare-s{}-t{}-n{}-{}",
            self.config.seed, self.config.trials, self.config.n_min, self.config.n_max
        )
    }

    /// Writes each counterexample polygon plus `manifest.json` under
    /// `root/<stamp>/`. Returns the directory.
    pub fn write_counterexamples(&self, root: &Path) -> std::io::Result<PathBuf> {
        let dir = root.join(self.stamp());
        std::fs::create_dir_all(&dir)?;
        for c in &self.counterexamples {
            std::fs::write(dir.join(&c.file), &c.text)?;
        }
        let manifest = serde_json::to_string_pretty(&self.counterexamples)
            .expect("manifest always serializes");
        std::fs::write(dir.join("manifest.json"), manifest + "\n")?;
        Ok(dir)
    }
}
