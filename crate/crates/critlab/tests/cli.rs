//! End-to-end exercises of the CLI surface: subcommands, JSON schema,
//! exit codes, and the worker env override.

use critlab::graph::Graph;
use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

fn critlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_critlab"))
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let out = critlab().args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).expect("utf8");
    let value: Value = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {stdout}"));
    (value, code)
}

#[test]
fn analyze_complete_graph() {
    let (v, code) = run_json(&["analyze", "D~{", "--l", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "critlab/1");
    let r = &v["results"][0];
    assert_eq!(r["n"], 5);
    assert_eq!(r["chi"], 5);
    assert_eq!(r["omega"], 5);
    assert_eq!(r["alpha"], 1);
    assert_eq!(r["claw_free"], true);
    assert_eq!(r["criticality"]["is_critical"], true);
}

#[test]
fn analyze_file_with_many_graphs() {
    let dir = std::env::temp_dir();
    let path = dir.join("critlab_cli_analyze.g6");
    std::fs::write(&path, "Bw\nDhc\n").unwrap();
    let (v, code) = run_json(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[0]["chi"], 3); // K_3
    assert_eq!(results[1]["chi"], 3); // C_5
    assert_eq!(results[1]["criticality"]["is_critical"], false);
    assert_eq!(results[1]["criticality"]["clique_drop_witness"], serde_json::json!([0, 1]));
}

#[test]
fn analyze_bad_input_exits_one() {
    let out = critlab().args(["analyze", ">>garbage<<"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn usage_error_exits_one_and_help_exits_zero() {
    let out = critlab().args(["analyze", "--not-a-flag", "Bw"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = critlab().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("critlab"));
}

#[test]
fn extract_critical_peels_isolated_vertex() {
    // K_5 plus an isolated vertex.
    let mut edges = Vec::new();
    for u in 0..5 {
        for v in (u + 1)..5 {
            edges.push((u, v));
        }
    }
    let g = Graph::from_edges(6, &edges).unwrap();
    let (v, code) = run_json(&["extract-critical", &g.to_graph6(), "--l", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["extracted"]["graph6"], "D~{");
    assert_eq!(v["extracted"]["report"]["is_critical"], true);
    assert_eq!(v["input"]["chi"], 5);
}

#[test]
fn kempe_path_on_k6() {
    let (v, code) = run_json(&[
        "kempe", "path", "E~~w", "--l", "2", "--seq", "1,3", "--x", "0", "--y", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["found"], true);
    let path = v["path"].as_array().unwrap();
    assert_eq!(path.len(), 4);
    assert_eq!(path[0], 0);
    assert_eq!(path[3], 1);
    assert_eq!(v["lemma_finding"], false);

    // Degenerate empty sequence: the edge itself.
    let (v, code) = run_json(&[
        "kempe", "path", "E~~w", "--l", "2", "--x", "0", "--y", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["path"], serde_json::json!([0, 1]));
}

#[test]
fn check_lemmas_single_graph_and_corpus() {
    let (v, code) = run_json(&["check-lemmas", "E~~w", "--l", "3", "--lemmas", "all"]);
    assert_eq!(code, 0);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 8);
    assert!(verdicts.iter().all(|row| row["pass"] == true));

    let (v, code) = run_json(&["check-lemmas", "E~~w", "--l", "3", "--lemmas", "L-DEG,L-FORCE"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 2);

    let dir = std::env::temp_dir();
    let path = dir.join("critlab_cli_corpus.g6");
    std::fs::write(&path, "Bw\nC~\nDhc\nD~{\n").unwrap();
    let (v, code) = run_json(&["check-lemmas", path.to_str().unwrap(), "--l", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["graphs_checked"], 4);
    assert_eq!(v["per_lemma"]["L-DEG"]["failed"], 0);

    // Text format renders a table.
    let out = critlab()
        .args(["check-lemmas", "E~~w", "--l", "3", "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("L-DEG"));
    assert!(text.contains("lemma"));
}

#[test]
fn search_small_range() {
    let (v, code) = run_json(&["search", "--l", "2", "--n-max", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "critlab/1");
    assert_eq!(v["graphs_scanned"], 49); // levels 3..=5
    assert_eq!(v["criticals_found"]["count"], 3);
    assert_eq!(v["criticals_found"]["all_complete"], true);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
}

#[test]
fn search_stream_mode_reads_stdin() {
    let mut child = critlab()
        .args(["search", "--l", "2", "--stream"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"Bw\nD~{\nDhc\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["graphs_scanned"], 3);
    assert_eq!(v["criticals_found"]["count"], 2); // K_3 and K_5
}

#[test]
fn workers_env_overrides_flag() {
    let out = critlab()
        .args(["search", "--l", "2", "--n-max", "4", "--workers", "4"])
        .env("CRITLAB_WORKERS", "1")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["workers"], 1);

    let out = critlab()
        .args(["search", "--l", "2", "--n-max", "4", "--workers", "3"])
        .env_remove("CRITLAB_WORKERS")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["workers"], 3);
}

#[test]
fn search_rejects_bad_config() {
    let out = critlab().args(["search", "--l", "1", "--n-max", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = critlab()
        .args(["search", "--l", "2", "--n-max", "5", "--prune", "bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
