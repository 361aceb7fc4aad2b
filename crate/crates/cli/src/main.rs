use clap::{Args, Parser, Subcommand};
use polyembed::audit::{compare, CompareConfig};
use polyembed::embedding::{Embedding, GraphKind, GraphSpec};
use polyembed::generate::{generate, GenConfig, GenKind, DEFAULT_SPAN};
use polyembed::io::{doc_points, format_points, parse_points, EmbeddingDoc};
use polyembed::oracle::{
    oracle_max_clique, oracle_max_cycle, oracle_max_cycle_containing, oracle_max_path, OracleError,
    DEFAULT_CAP, DEFAULT_CLIQUE_CAP, MAX_CAP,
};
use polyembed::pointset::{embed_cycle_pointset, embed_path_pointset, verify_pointset, PointSet};
use polyembed::polygon_embed::{
    embed_clique_convex, embed_cycle_convex, embed_max_cycle_pseudo_convex, embed_path_convex,
    EmbedError,
};
use polyembed::svg::render_svg;
use polyembed::verify::verify_embedding;
use polyembed::visibility::{VisibilityGraph, ISOLATION_RULE};
use polyembed::{Point, Polygon};
use serde_json::json;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "polyembed",
    version,
    about = "Embed paths, cycles and cliques on polygon vertices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolyInput {
    /// Polygon file: one `x y` vertex per line, counter-clockwise.
    poly: PathBuf,
    /// Accept clockwise input by reversing it (vertex indices change).
    #[arg(long)]
    normalize: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify vertices: convexity, reflex, u-turn and isolated sets.
    Analyze {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Embed a graph on the polygon vertices.
    Embed {
        #[arg(long)]
        graph: GraphKind,
        /// Edges for paths and cycles, nodes for cliques. Defaults to the maximum.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        input: PolyInput,
    },
    /// Draw a spanning path or cycle on a point set.
    EmbedPoints {
        #[arg(long)]
        graph: GraphKind,
        points: PathBuf,
    },
    /// Check an embedding document against a polygon.
    Verify {
        /// Also reject crossings between graph edges.
        #[arg(long)]
        planar: bool,
        #[command(flatten)]
        input: PolyInput,
        embedding: PathBuf,
    },
    /// Exhaustive maximum for small polygons.
    Oracle {
        #[arg(long)]
        graph: GraphKind,
        #[arg(long)]
        cap: Option<usize>,
        /// Cycles only: every reflex vertex must lie on the cycle.
        #[arg(long)]
        require_reflex: bool,
        #[command(flatten)]
        input: PolyInput,
    },
    /// Seeded test polygon in the text format.
    Generate {
        #[arg(long)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        reflex: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SPAN)]
        span: i64,
    },
    /// Greedy maximum cycle against the exhaustive one on generated
    /// pseudo-convex polygons.
    Compare {
        #[arg(long)]
        trials: usize,
        /// Vertex-count range `A:B`, inclusive.
        #[arg(long, value_parser = parse_range)]
        n_range: (usize, usize),
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Counterexample directory root.
        #[arg(long, default_value = "runs")]
        out: PathBuf,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got `{s}`"))?;
    let a: usize = a.parse().map_err(|e| format!("`{a}`: {e}"))?;
    let b: usize = b.parse().map_err(|e| format!("`{b}`: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

/// A failed command: exit code plus message for stderr.
struct Failure(u8, String);

type Outcome = Result<(), Failure>;

fn invalid(msg: impl ToString) -> Failure {
    Failure(EXIT_INVALID, msg.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_points(path: &Path) -> Result<Vec<Point>, Failure> {
    parse_points(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_polygon(input: &PolyInput) -> Result<Polygon, Failure> {
    let pts = load_points(&input.poly)?;
    Polygon::validate(pts, input.normalize)
        .map_err(|e| invalid(format!("{}: {e}", input.poly.display())))
}

/// Writes to stdout; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print_json(v: &serde_json::Value) {
    emit(&(serde_json::to_string_pretty(v).expect("output always serializes") + "\n"));
}

fn embed_failure(e: EmbedError) -> Failure {
    let code = match e {
        EmbedError::NoCycle => EXIT_FAILED,
        EmbedError::SizeOutOfRange { .. } | EmbedError::DegenerateCycle(_) => EXIT_LIMIT,
        EmbedError::NotConvex | EmbedError::NotPseudoConvex | EmbedError::TooSmall { .. } => {
            EXIT_INVALID
        }
    };
    Failure(code, e.to_string())
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::PolygonTooLarge { .. } => Failure(EXIT_LIMIT, e.to_string()),
        OracleError::RequiredOutOfRange { .. } => invalid(e),
    }
}

fn analyze(input: &PolyInput) -> Outcome {
    let poly = load_polygon(input)?;
    let vis = VisibilityGraph::new(&poly);
    print_json(&json!({
        "n": poly.len(),
        "convex": poly.is_convex(),
        "pseudo_convex": poly.is_pseudo_convex(),
        "reflex": poly.reflex_vertices(),
        "u_turn_vertices": poly.u_turn_vertices(),
        "u_turn_edges": poly.u_turn_edges(),
        "isolated": vis.isolated_vertices(),
        "chords": vis.chords(),
        "isolation_rule": ISOLATION_RULE,
    }));
    Ok(())
}

fn build_embedding(
    poly: &Polygon,
    graph: GraphKind,
    size: Option<usize>,
) -> Result<Embedding, Failure> {
    let n = poly.len();
    match graph {
        GraphKind::Path => embed_path_convex(poly, size.unwrap_or(n.saturating_sub(3))),
        GraphKind::Cycle if poly.is_convex() => embed_cycle_convex(poly, size.unwrap_or(n / 2)),
        GraphKind::Cycle => {
            let emb = embed_max_cycle_pseudo_convex(poly)?;
            match size {
                Some(k) if k != emb.size() => Err(EmbedError::SizeOutOfRange {
                    requested: k,
                    min: emb.size(),
                    max: emb.size(),
                }),
                _ => Ok(emb),
            }
        }
        GraphKind::Clique => {
            let emb = embed_clique_convex(poly)?;
            match size {
                Some(k) if k > emb.size() => Err(EmbedError::SizeOutOfRange {
                    requested: k,
                    min: 0,
                    max: emb.size(),
                }),
                Some(k) => {
                    let mut sub = Embedding::clique(&emb.mapping[..k]);
                    sub.meta.optimal_claimed = k == emb.size();
                    Ok(sub)
                }
                None => Ok(emb),
            }
        }
    }
    .map_err(embed_failure)
}

impl From<EmbedError> for Failure {
    fn from(e: EmbedError) -> Self {
        embed_failure(e)
    }
}

fn embed(graph: GraphKind, size: Option<usize>, svg: Option<&Path>, input: &PolyInput) -> Outcome {
    let poly = load_polygon(input)?;
    let emb = build_embedding(&poly, graph, size)?;
    if let Some(path) = svg {
        std::fs::write(path, render_svg(poly.vertices(), Some(&emb)))
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    }
    emit(&(EmbeddingDoc::for_polygon(poly.vertices(), &emb).to_json() + "\n"));
    Ok(())
}

fn embed_points(graph: GraphKind, path: &Path) -> Outcome {
    let set = PointSet::new(load_points(path)?)
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let emb = match graph {
        GraphKind::Path => embed_path_pointset(&set),
        GraphKind::Cycle => embed_cycle_pointset(&set),
        GraphKind::Clique => return Err(invalid("point sets support --graph path or cycle")),
    }
    .map_err(invalid)?;
    if let Err(v) = verify_pointset(&set, &emb) {
        print_json(&json!({ "ok": false, "violations": v }));
        return Err(Failure(EXIT_FAILED, "drawing failed verification".into()));
    }
    emit(&(EmbeddingDoc::for_points(set.points(), &emb).to_json() + "\n"));
    Ok(())
}

fn verify(planar: bool, input: &PolyInput, doc_path: &Path) -> Outcome {
    let poly = load_polygon(input)?;
    let doc = EmbeddingDoc::from_json(&read(doc_path)?)
        .map_err(|e| invalid(format!("{}: {e}", doc_path.display())))?;
    if let Some(raw) = &doc.polygon {
        if doc_points(raw) != poly.vertices() {
            return Err(invalid("embedding document lists a different polygon"));
        }
    }
    let emb = doc
        .to_embedding()
        .map_err(|e| invalid(format!("{}: {e}", doc_path.display())))?;
    let size = match doc.graph.kind {
        GraphKind::Path => doc.graph.nodes.saturating_sub(1),
        GraphKind::Cycle | GraphKind::Clique => doc.graph.nodes,
    };
    let spec = GraphSpec {
        kind: doc.graph.kind,
        size,
    };
    match verify_embedding(&poly, &emb, spec, planar) {
        Ok(()) => {
            print_json(&json!({ "ok": true, "violations": [] }));
            Ok(())
        }
        Err(v) => {
            print_json(&json!({ "ok": false, "violations": v }));
            Err(Failure(EXIT_FAILED, format!("{} violation(s)", v.len())))
        }
    }
}

fn oracle(
    graph: GraphKind,
    cap: Option<usize>,
    require_reflex: bool,
    input: &PolyInput,
) -> Outcome {
    let poly = load_polygon(input)?;
    let cap = cap.unwrap_or(match graph {
        GraphKind::Clique => DEFAULT_CLIQUE_CAP,
        _ => DEFAULT_CAP,
    });
    if cap > MAX_CAP {
        return Err(Failure(
            EXIT_LIMIT,
            format!("cap {cap} exceeds the hard limit {MAX_CAP}"),
        ));
    }
    if require_reflex && graph != GraphKind::Cycle {
        return Err(invalid("--require-reflex applies to --graph cycle only"));
    }
    let res = match graph {
        GraphKind::Path => oracle_max_path(&poly, cap),
        GraphKind::Cycle if require_reflex => {
            oracle_max_cycle_containing(&poly, &poly.reflex_vertices(), cap)
        }
        GraphKind::Cycle => oracle_max_cycle(&poly, cap),
        GraphKind::Clique => oracle_max_clique(&poly, cap),
    }
    .map_err(oracle_failure)?;
    print_json(&json!({
        "graph": graph,
        "cap": cap,
        "require_reflex": require_reflex,
        "size": res.size,
        "witness": EmbeddingDoc::for_polygon(poly.vertices(), &res.witness),
        "explored": res.explored,
        "cap_respected": res.cap_respected,
    }));
    Ok(())
}

fn generate_cmd(kind: GenKind, n: usize, seed: u64, reflex: Option<usize>, span: i64) -> Outcome {
    let mut cfg = GenConfig::new(kind, n, seed);
    cfg.reflex_target = reflex;
    cfg.span = span;
    let poly = generate(&cfg).map_err(invalid)?;
    emit(&format_points(poly.vertices(), &[cfg.header()]));
    Ok(())
}

fn compare_cmd(cfg: CompareConfig, out: &Path) -> Outcome {
    if cfg.cap > MAX_CAP {
        return Err(Failure(
            EXIT_LIMIT,
            format!("cap {} exceeds the hard limit {MAX_CAP}", cfg.cap),
        ));
    }
    if cfg.n_min < 8 {
        return Err(invalid("--n-range must start at 8 or above"));
    }
    let start = Instant::now();
    let report = compare(&cfg).map_err(oracle_failure)?;
    let dir = report
        .write_counterexamples(out)
        .map_err(|e| invalid(format!("{}: {e}", out.display())))?;
    emit(&(report.to_json() + "\n"));
    eprintln!(
        "{} trials in {:.2?}; {} counterexample(s) under {}",
        report.summary.trials,
        start.elapsed(),
        report.counterexamples.len(),
        dir.display()
    );
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { input } => analyze(&input),
        Command::Embed {
            graph,
            size,
            svg,
            input,
        } => embed(graph, size, svg.as_deref(), &input),
        Command::EmbedPoints { graph, points } => embed_points(graph, &points),
        Command::Verify {
            planar,
            input,
            embedding,
        } => verify(planar, &input, &embedding),
        Command::Oracle {
            graph,
            cap,
            require_reflex,
            input,
        } => oracle(graph, cap, require_reflex, &input),
        Command::Generate {
            kind,
            n,
            seed,
            reflex,
            span,
        } => generate_cmd(kind, n, seed, reflex, span),
        Command::Compare {
            trials,
            n_range: (n_min, n_max),
            seed,
            cap,
            out,
        } => compare_cmd(
            CompareConfig {
                trials,
                n_min,
                n_max,
                seed,
                cap,
            },
            &out,
        ),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 and usage on stderr for bad arguments.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("polyembed: {msg}");
            ExitCode::from(code)
        }
    }
}
