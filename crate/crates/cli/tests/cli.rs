use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const H6: &str = "4 0\n2 3\n-2 3\n-4 0\n-2 -3\n2 -3\n";
const SQUARE: &str = "0 0\n4 0\n4 4\n0 4\n";
const L6: &str = "0 0\n3 0\n3 1\n1 1\n1 3\n0 3\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyembed"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn setup() -> TempDir {
    let d = TempDir::new().unwrap();
    write(d.path(), "h6.poly", H6);
    write(d.path(), "square.poly", SQUARE);
    write(d.path(), "l6.poly", L6);
    d
}

#[test]
fn embed_cycle_on_hexagon() {
    let d = setup();
    let o = run(d.path(), &["embed", "--graph", "cycle", "h6.poly"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
    assert_eq!(v["graph"]["kind"], "cycle");
    assert_eq!(v["mapping"], serde_json::json!([0, 2, 4]));
    assert_eq!(v["meta"]["optimal_claimed"], true);
}

#[test]
fn verify_flags_polygon_edge() {
    let d = setup();
    let bad = serde_json::json!({
        "graph": {"kind": "cycle", "nodes": 3, "edges": [[0, 1], [1, 2], [2, 0]]},
        "mapping": [0, 1, 3],
        "edges": [[0, 1], [1, 3], [3, 0]],
        "meta": {"optimal_claimed": false, "diagnostics": []}
    });
    write(d.path(), "bad.json", &bad.to_string());
    let o = run(d.path(), &["verify", "--planar", "h6.poly", "bad.json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["ok"], false);
    let kinds: Vec<&str> = v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"EdgeIsPolygonEdge"), "{kinds:?}");
}

#[test]
fn embed_then_verify_round_trip() {
    let d = setup();
    for graph in ["path", "cycle", "clique"] {
        let o = run(d.path(), &["embed", "--graph", graph, "h6.poly"]);
        assert_eq!(code(&o), 0, "{graph}");
        write(d.path(), "e.json", std::str::from_utf8(&o.stdout).unwrap());
        let planar = graph != "clique";
        let mut args = vec!["verify"];
        if planar {
            args.push("--planar");
        }
        args.extend(["h6.poly", "e.json"]);
        let o = run(d.path(), &args);
        assert_eq!(
            code(&o),
            0,
            "{graph}: {}",
            String::from_utf8_lossy(&o.stdout)
        );
    }
}

#[test]
fn oracle_path_on_square() {
    let d = setup();
    let o = run(d.path(), &["oracle", "--graph", "path", "square.poly"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["size"], 1);
}

#[test]
fn oracle_limits() {
    let d = setup();
    let o = run(
        d.path(),
        &["oracle", "--graph", "cycle", "--cap", "65", "h6.poly"],
    );
    assert_eq!(code(&o), 3);
    let o = run(
        d.path(),
        &["oracle", "--graph", "cycle", "--cap", "4", "h6.poly"],
    );
    assert_eq!(code(&o), 3);
    let o = run(
        d.path(),
        &["oracle", "--graph", "path", "--require-reflex", "l6.poly"],
    );
    assert_eq!(code(&o), 2);
    let o = run(
        d.path(),
        &["oracle", "--graph", "cycle", "--require-reflex", "l6.poly"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["size"], 0);
}

#[test]
fn size_violations_exit_3() {
    let d = setup();
    let o = run(
        d.path(),
        &["embed", "--graph", "path", "--size", "2", "square.poly"],
    );
    assert_eq!(code(&o), 3);
    let o = run(
        d.path(),
        &["embed", "--graph", "cycle", "--size", "4", "h6.poly"],
    );
    assert_eq!(code(&o), 3);
    let o = run(
        d.path(),
        &["embed", "--graph", "clique", "--size", "2", "h6.poly"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["mapping"].as_array().unwrap().len(), 2);
}

#[test]
fn invalid_input_exits_2() {
    let d = setup();
    let o = run(
        d.path(),
        &["embed", "--graph", "cycle", "--bogus", "h6.poly"],
    );
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert!(o.stdout.is_empty());

    write(d.path(), "cw.poly", "0 0\n0 4\n4 4\n4 0\n");
    let o = run(d.path(), &["analyze", "cw.poly"]);
    assert_eq!(code(&o), 2);
    let o = run(d.path(), &["analyze", "--normalize", "cw.poly"]);
    assert_eq!(code(&o), 0);

    write(d.path(), "junk.poly", "0 0\n1,1\n");
    assert_eq!(code(&run(d.path(), &["analyze", "junk.poly"])), 2);
    assert_eq!(code(&run(d.path(), &["analyze", "missing.poly"])), 2);
    // Path embedding needs a convex polygon.
    assert_eq!(
        code(&run(d.path(), &["embed", "--graph", "path", "l6.poly"])),
        2
    );
}

#[test]
fn analyze_reports_classes() {
    let d = setup();
    let o = run(d.path(), &["analyze", "l6.poly"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["convex"], false);
    assert_eq!(v["pseudo_convex"], true);
    assert_eq!(v["reflex"], serde_json::json!([3]));
    assert_eq!(v["isolated"], serde_json::json!([1, 2, 4, 5]));
}

#[test]
fn embed_points_round_trip() {
    let d = setup();
    write(d.path(), "pts.txt", "0 0\n1 3\n2 1\n3 4\n4 1\n");
    for graph in ["path", "cycle"] {
        let o = run(d.path(), &["embed-points", "--graph", graph, "pts.txt"]);
        assert_eq!(code(&o), 0);
        let v = json(&o);
        assert!(v["points"].is_array());
        assert!(v.get("polygon").is_none());
    }
    // Collinear points still admit the sorted path, but not a cycle.
    write(d.path(), "line.txt", "0 0\n1 1\n2 2\n5 0\n");
    assert_eq!(
        code(&run(
            d.path(),
            &["embed-points", "--graph", "path", "line.txt"]
        )),
        0
    );
    assert_eq!(
        code(&run(
            d.path(),
            &["embed-points", "--graph", "cycle", "line.txt"]
        )),
        2
    );
    write(d.path(), "dup.txt", "0 0\n1 1\n0 0\n5 0\n");
    assert_eq!(
        code(&run(
            d.path(),
            &["embed-points", "--graph", "path", "dup.txt"]
        )),
        2
    );
}

#[test]
fn generate_embed_verify_pipeline() {
    let d = setup();
    let cases: &[&[&str]] = &[
        &["--kind", "convex", "--n", "9", "--seed", "5"],
        &[
            "--kind",
            "pseudoconvex",
            "--n",
            "12",
            "--seed",
            "3",
            "--reflex",
            "3",
        ],
        &["--kind", "ortho", "--n", "12", "--seed", "0"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let mut args = vec!["generate"];
        args.extend_from_slice(case);
        let o = run(d.path(), &args);
        assert_eq!(code(&o), 0);
        let text = String::from_utf8(o.stdout).unwrap();
        assert!(text.starts_with("# kind="));
        let name = format!("g{i}.poly");
        write(d.path(), &name, &text);
        let o = run(
            d.path(),
            &["embed", "--graph", "cycle", "--svg", "g.svg", &name],
        );
        assert_eq!(code(&o), 0, "{text}");
        write(d.path(), "e.json", std::str::from_utf8(&o.stdout).unwrap());
        let o = run(d.path(), &["verify", "--planar", &name, "e.json"]);
        assert_eq!(code(&o), 0);
        assert!(std::fs::read_to_string(d.path().join("g.svg"))
            .unwrap()
            .contains("<line"));
    }
    assert_eq!(
        code(&run(
            d.path(),
            &["generate", "--kind", "ortho", "--n", "9", "--seed", "0"]
        )),
        2
    );
}

#[test]
fn outputs_are_byte_identical() {
    let d = setup();
    let a = run(
        d.path(),
        &["embed", "--graph", "cycle", "--svg", "a.svg", "h6.poly"],
    );
    let b = run(
        d.path(),
        &["embed", "--graph", "cycle", "--svg", "b.svg", "h6.poly"],
    );
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        std::fs::read(d.path().join("a.svg")).unwrap(),
        std::fs::read(d.path().join("b.svg")).unwrap()
    );
    let args = [
        "generate",
        "--kind",
        "pseudoconvex",
        "--n",
        "10",
        "--seed",
        "9",
        "--reflex",
        "4",
    ];
    assert_eq!(run(d.path(), &args).stdout, run(d.path(), &args).stdout);
}

#[test]
fn compare_writes_report_and_manifest() {
    let d = setup();
    let args = [
        "compare",
        "--trials",
        "6",
        "--n-range",
        "8:11",
        "--seed",
        "2",
        "--out",
        "runs",
    ];
    let a = run(d.path(), &args);
    assert_eq!(code(&a), 0);
    let v = json(&a);
    assert_eq!(v["summary"]["trials"], 6);
    let rows = v["rows"].as_array().unwrap();
    let keys: Vec<(u64, u64)> = rows
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["seed"].as_u64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let dir = d.path().join("runs").join("compare-s2-t6-n8-11");
    assert!(dir.join("manifest.json").exists());
    let b = run(d.path(), &args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        code(&run(
            d.path(),
            &[
                "compare",
                "--trials",
                "2",
                "--n-range",
                "9:8",
                "--seed",
                "1"
            ]
        )),
        2
    );
}
