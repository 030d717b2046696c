//! End-to-end tests of the command-line binary: document formats, exit
//! codes, determinism and the recheck pass.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_treeplan"))
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn y_tree_files(dir: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let graph = write(
        dir,
        "y.json",
        r#"{
            "vertices": ["c", "a", "b", "r"],
            "edges": [
                {"id": "ca", "ends": ["c", "a"], "length": 1.0},
                {"id": "cb", "ends": ["c", "b"], "length": 1.0},
                {"id": "cr", "ends": ["c", "r"], "length": 1.0}
            ]
        }"#,
    );
    let from = write(
        dir,
        "from.json",
        r#"{"points": [{"edge": "ca", "t": 0.5}, {"edge": "cb", "t": 0.5}]}"#,
    );
    let to = write(
        dir,
        "to.json",
        r#"{"points": [{"edge": "cb", "t": 0.5}, {"edge": "ca", "t": 0.5}]}"#,
    );
    (graph, from, to)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn plan_is_deterministic_and_rechecks_clear() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, from, to) = y_tree_files(dir.path());
    let args = [
        "plan",
        "--graph",
        graph.to_str().unwrap(),
        "--root",
        "r",
        "--from",
        from.to_str().unwrap(),
        "--to",
        to.to_str().unwrap(),
        "--recheck",
    ];
    let first = run(&args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert!(String::from_utf8_lossy(&first.stderr).contains("recheck: clear"));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "outputs must be byte-identical");

    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(doc["domain_index"], 0);
    for stage in ["descentA", "permute", "slide", "descentB", "combined"] {
        assert!(doc[stage]["agents"].is_array(), "missing stage {stage}");
    }
    assert!(doc["citations"].is_array());
}

#[test]
fn plan_accepts_equal_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, from, _) = y_tree_files(dir.path());
    let out = run(&[
        "plan",
        "--graph",
        graph.to_str().unwrap(),
        "--root",
        "r",
        "--from",
        from.to_str().unwrap(),
        "--to",
        from.to_str().unwrap(),
        "--recheck",
    ]);
    assert!(out.status.success());
}

#[test]
fn plan_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, from, to) = y_tree_files(dir.path());
    let target = dir.path().join("plan.json");
    let out = run(&[
        "plan",
        "--graph",
        graph.to_str().unwrap(),
        "--root",
        "r",
        "--from",
        from.to_str().unwrap(),
        "--to",
        to.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert!(doc["combined"]["agents"].is_array());
}

#[test]
fn tc_reports_tree_pair_value() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, _, _) = y_tree_files(dir.path());
    let out = run(&["tc", "--graph", graph.to_str().unwrap(), "--agents", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["configuration_tc"]["value"], 2);
    assert_eq!(doc["configuration_tc"]["citations"][0], "tree-pair-formula");
    assert_eq!(doc["graph_tc"]["value"], 1);
    assert_eq!(doc["configuration_upper_bound"], 3);
}

#[test]
fn tc_detects_known_surfaces() {
    let dir = tempfile::tempdir().unwrap();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 0..5 {
        vertices.push(format!("\"v{i}\""));
        for j in i + 1..5 {
            edges.push(format!(
                "{{\"id\": \"e{i}{j}\", \"ends\": [\"v{i}\", \"v{j}\"]}}"
            ));
        }
    }
    let text = format!(
        "{{\"vertices\": [{}], \"edges\": [{}]}}",
        vertices.join(", "),
        edges.join(", ")
    );
    let graph = write(dir.path(), "k5.json", &text);
    let out = run(&["tc", "--graph", graph.to_str().unwrap(), "--agents", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["configuration_tc"]["value"], 5);
    assert_eq!(
        doc["configuration_tc"]["citations"][0],
        "known-surface-value"
    );
    assert!(doc["note"].as_str().unwrap().contains("genus 6"));
}

#[test]
fn random_plan_emits_exact_probabilities() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, from, to) = y_tree_files(dir.path());
    let out = run(&[
        "random-plan",
        "--graph",
        graph.to_str().unwrap(),
        "--root",
        "r",
        "--from",
        from.to_str().unwrap(),
        "--to",
        to.to_str().unwrap(),
        "--recheck",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("recheck: clear"));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[0]["p_exact"], "1/1");
    assert_eq!(entries[1]["p_exact"], "0/1");
}

#[test]
fn analyze_lists_pair_complex() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, _, _) = y_tree_files(dir.path());
    let out = run(&["analyze", "--graph", graph.to_str().unwrap(), "--root", "r"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["circle_count_ordered_pairs"], 1);
    assert_eq!(doc["circle_count_unordered_pairs"], 1);
    assert_eq!(doc["pair_complex"]["cell_count"], 2);
    assert_eq!(doc["pair_complex"]["rank"], 1);
}

#[test]
fn verify_default_suite_passes() {
    let out = run(&["verify", "--suite", "default"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("interval: two components at n = 2"));
    assert!(text.contains("circle: two components at n = 3"));
    assert!(text.lines().last().unwrap().contains("checks passed"));
}

#[test]
fn discretize_matches_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "interval.json",
        r#"{"vertices": ["u", "v"], "edges": [{"id": "e", "ends": ["u", "v"]}]}"#,
    );
    let out = run(&[
        "discretize",
        "--graph",
        graph.to_str().unwrap(),
        "--agents",
        "2",
        "--subdivision",
        "3",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["cells_by_dim"][0], 6);
    assert_eq!(doc["components"], 2);
}

#[test]
fn validation_errors_exit_one_with_machine_code() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, from, to) = y_tree_files(dir.path());
    // Non-univalent root.
    let out = run(&[
        "plan",
        "--graph",
        graph.to_str().unwrap(),
        "--root",
        "c",
        "--from",
        from.to_str().unwrap(),
        "--to",
        to.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "root-not-univalent");

    // Malformed document.
    let bad = write(dir.path(), "bad.json", "{");
    let out = run(&["tc", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "parse");

    // Subdivision too coarse.
    let out = run(&[
        "discretize",
        "--graph",
        graph.to_str().unwrap(),
        "--agents",
        "3",
        "--subdivision",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "subdivision-too-coarse");
}
