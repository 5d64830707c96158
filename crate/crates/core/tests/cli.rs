use std::path::Path;
use std::process::Command;

use rainbow_trees::cli::{run, DecompositionFile, ExperimentRow, StrategyReport, EXIT_BUDGET, EXIT_FAILED, EXIT_INVALID, EXIT_OK};
use rainbow_trees::pipeline::PipelineParams;
use rainbow_trees::rmbg::Rmbg;
use rainbow_trees::trees::{path_tree, star_tree};
use rainbow_trees::EdgeColouredKn;

fn rainbow(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["rainbow"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn gen_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let k8 = p(dir.path(), "k8.json");
    assert_eq!(rainbow(&["gen", "--n", "8", "--seed", "1", "--out", &k8]).0, EXIT_OK);
    EdgeColouredKn::load(&k8).unwrap();
    let (code, out, _) = rainbow(&["verify", &k8]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"factorization_valid\": true"));
}

#[test]
fn broken_instance_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let bad = p(dir.path(), "bad.json");
    std::fs::write(&bad, r#"{"n": 4, "colours": [0, 0, 1, 1, 2, 2]}"#).unwrap();
    assert_eq!(rainbow(&["verify", &bad]).0, EXIT_FAILED);
    assert_eq!(rainbow(&["decompose", "--instance", &bad]).0, EXIT_INVALID);
}

#[test]
fn k4_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = p(dir.path(), "k4.json");
    rainbow(&["gen", "--n", "4", "--method", "circle", "--out", &k4]);
    let (code, out, _) = rainbow(&["decompose", "--instance", &k4]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("refuted"));
}

#[test]
fn decomposition_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (k8, d8) = (p(dir.path(), "k8.json"), p(dir.path(), "d8.json"));
    rainbow(&["gen", "--n", "8", "--seed", "5", "--out", &k8]);
    assert_eq!(rainbow(&["decompose", "--instance", &k8, "--seed", "2", "--out", &d8]).0, EXIT_OK);
    let file = DecompositionFile::load(&d8).unwrap();
    assert_eq!((file.status.as_str(), file.parts.len()), ("found", 4));
    let (code, out, _) = rainbow(&["verify", &k8, "--decomposition", &d8]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"valid\": true"));
}

#[test]
fn isomorphic_decompose_with_tree_files() {
    let dir = tempfile::tempdir().unwrap();
    let (k6, path, star) = (p(dir.path(), "k6.json"), p(dir.path(), "p.json"), p(dir.path(), "s.json"));
    rainbow(&["gen", "--n", "6", "--method", "circle", "--out", &k6]);
    path_tree(6).unwrap().save(&path).unwrap();
    star_tree(6).unwrap().save(&star).unwrap();
    assert_eq!(rainbow(&["decompose", "--instance", &k6, "--isomorphic-to", &path]).0, EXIT_FAILED);
    assert_eq!(rainbow(&["decompose", "--instance", &k6, "--isomorphic-to", &star]).0, EXIT_FAILED);
    let p5 = p(dir.path(), "p5.json");
    path_tree(5).unwrap().save(&p5).unwrap();
    assert_eq!(rainbow(&["decompose", "--instance", &k6, "--isomorphic-to", &p5]).0, EXIT_INVALID);
}

#[test]
fn tiny_budget_is_exhaustion() {
    let dir = tempfile::tempdir().unwrap();
    let k = p(dir.path(), "k.json");
    rainbow(&["gen", "--n", "20", "--method", "circle", "--out", &k]);
    let (code, out, _) = rainbow(&["decompose", "--instance", &k, "--budget", "1ns"]);
    assert!(code == EXIT_BUDGET || code == EXIT_OK, "{out}");
    assert_eq!(rainbow(&["decompose", "--instance", &k, "--budget", "0s"]).0, EXIT_INVALID);
}

#[test]
fn rmbg_search_is_deterministic_and_loadable() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, r) = (p(dir.path(), "a.json"), p(dir.path(), "b.json"), p(dir.path(), "r.json"));
    for f in [&a, &b] {
        assert_eq!(rainbow(&["rmbg", "search", "--m", "2", "--max-degree", "8", "--seed", "0", "--out", f]).0, EXIT_OK);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    Rmbg::load(&a).unwrap();
    let (code, out, _) = rainbow(&["rmbg", "verify", &a]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Proven"));
    assert_eq!(rainbow(&["rmbg", "regularize", &a, "--d", "2", "--out", &r]).0, EXIT_OK);
    assert_eq!(Rmbg::load(&r).unwrap().edge_count(), 48);
    assert_eq!(rainbow(&["rmbg", "regularize", &a, "--d", "9"]).0, EXIT_FAILED);
}

#[test]
fn rmbg_refutation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(dir.path(), "h.json");
    // X-vertex 2 has no neighbours
    std::fs::write(&f, r#"{"m": 1, "adj": [[0, 1, 2, 3], [0, 1, 2, 3], []]}"#).unwrap();
    assert_eq!(rainbow(&["rmbg", "verify", &f]).0, EXIT_FAILED);
    assert_eq!(rainbow(&["rmbg", "verify", &f, "--sampled", "5"]).0, EXIT_FAILED);
}

#[test]
fn nibble_run_reports_both_matchings() {
    let (code, out, _) = rainbow(&["nibble", "run", "--vertices", "300", "--degree", "10", "--rounds", "20", "--gamma", "1.0"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["nibble"]["coverage"].as_f64().unwrap() > 0.5);
    assert!(v["greedy"]["coverage"].as_f64().unwrap() > 0.5);
}

#[test]
fn absorber_demos_pass() {
    for kind in ["edge", "colour"] {
        let (code, out, err) = rainbow(&["absorber-demo", "--kind", kind, "--scale", "2"]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert!(out.contains("\"passed\": true"));
    }
    assert_eq!(rainbow(&["absorber-demo", "--kind", "colour", "--scale", "9"]).0, EXIT_INVALID);
}

#[test]
fn strategy_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (params, out) = (p(dir.path(), "params.json"), p(dir.path(), "s.json"));
    PipelineParams::published_defaults(20).save(&params).unwrap();
    assert_eq!(rainbow(&["strategy", "--n", "20", "--params", &params, "--out", &out]).0, EXIT_OK);
    let r: StrategyReport = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.steps.len(), 10);
    assert_eq!(r.params.n, 20);
    assert_eq!(rainbow(&["strategy", "--n", "7"]).0, EXIT_INVALID);
}

#[test]
fn experiment_csv_is_deterministic() {
    let args = ["experiment", "--task", "decompose", "--n", "6", "--runs", "4", "--seed", "3"];
    let (code, a, _) = rainbow(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, rainbow(&args).1);
    let rows: Vec<ExperimentRow> = csv::Reader::from_reader(a.as_bytes()).deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.iter().map(|r| r.seed).collect::<Vec<_>>(), vec![3, 4, 5, 6]);
    assert!(rows.iter().all(|r| r.outcome == "found"));
}

#[test]
fn unknown_flags_are_invalid_input() {
    assert_eq!(rainbow(&["gen"]).0, EXIT_INVALID);
    assert_eq!(rainbow(&["gen", "--n", "5"]).0, EXIT_INVALID);
    assert_eq!(rainbow(&["verify", "/definitely/not/here.json"]).0, EXIT_INVALID);
    assert_eq!(rainbow(&["--help"]).0, EXIT_OK);
}

#[test]
fn binary_exit_codes_and_logging() {
    let bin = env!("CARGO_BIN_EXE_rainbow");
    let dir = tempfile::tempdir().unwrap();
    let k4 = p(dir.path(), "k4.json");
    let st = Command::new(bin).args(["gen", "--n", "4", "--out", &k4]).status().unwrap();
    assert_eq!(st.code(), Some(EXIT_OK));
    let o = Command::new(bin).args(["decompose", "--instance", &k4]).env("RAINBOW_LOG", "info").output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_FAILED));
    assert!(String::from_utf8_lossy(&o.stderr).contains("decompose n = 4"));
    let quiet = Command::new(bin).args(["decompose", "--instance", &k4]).env("RAINBOW_LOG", "error").output().unwrap();
    assert!(quiet.stderr.is_empty());
    assert_eq!(o.stdout, quiet.stdout);
}
