//! End-to-end checks of the binary: output shapes, pipeline composition,
//! byte-stable output, and the exit-code contract.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dgog"))
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dgog-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn bs12_path() -> PathBuf {
    write_temp(
        "bs12.gog",
        r#"{"vertices": [{"id": "v", "group": {"type": "Z"}}],
           "edges": [{"id": "e", "range": "v", "source": "v",
                      "edge_group": {"type": "Z"}, "n": 2, "m": 1}]}"#,
    )
}

fn z2z3_path() -> PathBuf {
    write_temp(
        "z2z3.gog",
        r#"{"vertices": [{"id": "v", "group": {"type": "Zmod", "order": 2}},
                         {"id": "w", "group": {"type": "Zmod", "order": 3}}],
           "edges": [{"id": "e", "range": "v", "source": "w",
                      "edge_group": {"type": "Zmod", "order": 1}, "n": 1, "m": 1}]}"#,
    )
}

fn rose2_path() -> PathBuf {
    write_temp(
        "rose2.gog",
        r#"{"vertices": [{"id": "v", "group": {"type": "Z"}}],
           "edges": [{"id": "e0", "range": "v", "source": "v",
                      "edge_group": {"type": "Z"}, "n": 1, "m": 1},
                     {"id": "e1", "range": "v", "source": "v",
                      "edge_group": {"type": "Z"}, "n": 1, "m": 1}]}"#,
    )
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn validate_reports_ok() {
    let out = run(&["validate", bs12_path().to_str().unwrap()]);
    assert!(stdout(&out).starts_with("valid"));
}

#[test]
fn normalize_and_mul_reduce_words() {
    let graph = bs12_path();
    let g = graph.to_str().unwrap();
    assert_eq!(stdout(&run(&["normalize", g, "3 e 0"])).trim(), "1 e 1");
    assert_eq!(stdout(&run(&["mul", g, "1 e 0", "1 e 0"])).trim(), "1 e 1 e 0");
    assert_eq!(stdout(&run(&["invert", g, "0 e 0"])).trim(), "0 e~ 0");

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["normalize", g, "3 e 0", "--format", "json"])))
            .unwrap();
    assert_eq!(json["tail"], "1");
    assert_eq!(json["letters"][0]["rep"], "1");

    let graph = z2z3_path();
    let g = graph.to_str().unwrap();
    assert_eq!(stdout(&run(&["normalize", g, "1 e 1 e~ 1 e 1"])).trim(), "1 e 1 e~ 1 e 1");
}

#[test]
fn ktheory_json_contract() {
    let out = stdout(&run(&["ktheory", rose2_path().to_str().unwrap(), "--format", "json"]));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["K0"]["free"], 0);
    assert_eq!(json["K0"]["torsion"].as_array().unwrap().len(), 0);
    assert_eq!(json["K1"]["free"], 0);
    assert_eq!(json["N"], serde_json::json!([[2]]));
}

#[test]
fn realize_pipes_into_every_graph_consumer() {
    let realized = stdout(&run(&["realize", "--t", "[[3]]", "--s", "[[1]]"]));

    let k = run_with_stdin(&["ktheory", "-", "--format", "json"], &realized);
    let json: serde_json::Value = serde_json::from_str(&stdout(&k)).unwrap();
    assert_eq!(json["K0"]["torsion"], serde_json::json!([3]));
    assert_eq!(json["K0"]["free"], 0);
    assert_eq!(json["K1"]["torsion"].as_array().unwrap().len(), 0);

    assert!(stdout(&run_with_stdin(&["validate", "-"], &realized)).starts_with("valid"));

    let kirchberg = run_with_stdin(&["check-kirchberg", "-", "--format", "json"], &realized);
    let json: serde_json::Value = serde_json::from_str(&stdout(&kirchberg)).unwrap();
    assert_eq!(json["overall"], "PASS");

    let tree = run_with_stdin(&["tree", "-", "--base", "u000", "--depth", "1"], &realized);
    assert!(stdout(&tree).starts_with("digraph"));
}

#[test]
fn act_runs_the_odometer() {
    let graph = bs12_path();
    let g = graph.to_str().unwrap();
    assert_eq!(stdout(&run(&["act", g, "1", "|1:e"])).trim(), "|0:e");
    assert_eq!(stdout(&run(&["act", g, "1", "|0:e"])).trim(), "1:e|0:e");
    // Identity fixes everything; the parsed lasso 1:e|0:e.1:e absorbs its
    // prefix into the cycle, so both sides print the canonical |1:e.0:e.
    assert_eq!(stdout(&run(&["act", g, "0", "1:e|0:e.1:e"])).trim(), "|1:e.0:e");
}

#[test]
fn hull_mul_composes_canonically() {
    let graph = bs12_path();
    let g = graph.to_str().unwrap();
    let out = stdout(&run(&["hull-mul", g, "1 e 0", "0 e 0", "0 e 0", "1 e 1 e 0"]));
    assert_eq!(out.trim(), "tau[1 e 0] sigma[1 e 1 e 0]");
    // Incomparable sigma/tau words give the zero map.
    let out = stdout(&run(&["hull-mul", g, "0 e 0", "0 e 0", "1 e 0", "0 e 0"]));
    assert_eq!(out.trim(), "0");
}

#[test]
fn tree_exports_are_deterministic() {
    let graph = z2z3_path();
    let g = graph.to_str().unwrap();
    let first = stdout(&run(&["tree", g, "--base", "v", "--depth", "3", "--format", "dot"]));
    let second = stdout(&run(&["tree", g, "--base", "v", "--depth", "3", "--format", "dot"]));
    assert_eq!(first, second);
    assert!(first.contains("digraph"));

    let quot = stdout(&run(&["tree", g, "--base", "w", "--depth", "3", "--format", "json", "--quotient"]));
    assert!(quot.contains("in-multiplicity 2 reverse-multiplicity 3"));
}

#[test]
fn text_reports_are_byte_stable() {
    for (path, args) in [
        (bs12_path(), vec!["ktheory"]),
        (bs12_path(), vec!["check-kirchberg"]),
        (z2z3_path(), vec!["validate"]),
    ] {
        let mut full = vec![args[0]];
        let p = path.to_str().unwrap().to_string();
        full.push(&p);
        let a = stdout(&run(&full));
        let b = stdout(&run(&full));
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn error_contract() {
    let graph = bs12_path();
    let g = graph.to_str().unwrap();

    // Domain errors: exit 1 with a machine-parseable prefix.
    let out = run(&["normalize", g, "1 f 0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error:validation:"), "{err}");

    let z2_loop = write_temp(
        "z2loop.gog",
        r#"{"vertices": [{"id": "v", "group": {"type": "Zmod", "order": 2}}],
           "edges": [{"id": "e", "range": "v", "source": "v",
                      "edge_group": {"type": "Zmod", "order": 2}, "n": 1, "m": 1}]}"#,
    );
    let out = run(&["ktheory", z2_loop.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:non-cyclic-infinite:"));

    let out = run(&["act", g, "0 e~ 0", "1:e|0:e"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:not-in-domain:"));

    let bad = write_temp("bad.gog", "not json");
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:parse:"));

    // Usage errors: exit 2.
    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["tree", g]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn realize_writes_documents() {
    let dir = std::env::temp_dir().join(format!("dgog-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("realized.gog");
    let out = run(&["realize", "--t", "[[2]]", "--s", "[[4]]", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let k = stdout(&run(&["ktheory", path.to_str().unwrap(), "--format", "json"]));
    let json: serde_json::Value = serde_json::from_str(&k).unwrap();
    assert_eq!(json["K0"]["torsion"], serde_json::json!([2]));
    assert_eq!(json["K1"]["torsion"], serde_json::json!([4]));

    // Singular input is rejected.
    let out = run(&["realize", "--t", "[[0]]", "--s", "[[1]]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:singular-matrix:"));
}
