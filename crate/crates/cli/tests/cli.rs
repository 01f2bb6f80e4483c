use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouppoly")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn crapo_rota_on_hs3() {
    let o = run(&["verify", "crapo-rota", "--group", "symmetric:3,symmetric:3", "--gens", &data("hs3.gens"), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lhs 27, rhs 27"), "{}", stdout(&o));
}

#[test]
fn chen_vertex_laplacian() {
    let o = run(&["laplacian", "spectrum", "--group", "cyclic:6,cyclic:6,cyclic:6", "--gens", &data("chen.gens"), "--dim", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("char poly: λ^3 - 12λ^2 + 33λ"), "{}", stdout(&o));
}

#[test]
fn paper_suite_passes() {
    let o = run(&["paper-suite"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(!out.contains("FAIL"));
    assert!(out.contains("17/17 passed"), "{out}");
}

#[test]
fn failed_axioms_exit_one() {
    let o = run(&["verify", "axioms", "--group", "cyclic:2^3", "--elems", &data("example_l.elems")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("submodularity fails at S={1,2} T={2,3}"));
}

#[test]
fn usage_and_scale_errors_exit_two() {
    assert_eq!(run(&["rank", "--group", "cyclic:6"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["verify", "crapo-rota", "--group", "cyclic:6^3", "--gens", &data("chen.gens"), "--cap", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap 10"));
}

#[test]
fn json_reports_are_deterministic() {
    let dir = std::env::temp_dir();
    let mut bodies = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("grouppoly-cli-det-{}-{i}.json", std::process::id()));
        let p = path.to_string_lossy().into_owned();
        let o = run(&["verify", "greene", "--group", "cyclic:2^6", "--gens", &data("binary_a.gens"), "--seed", "7", "--json", &p]);
        assert_eq!(o.status.code(), Some(0));
        bodies.push(std::fs::read(&path).unwrap());
        std::fs::remove_file(&path).ok();
    }
    assert_eq!(bodies[0], bodies[1]);
    let v: serde_json::Value = serde_json::from_slice(&bodies[0]).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "verify greene");
}

#[test]
fn rank_report_round_trips() {
    let path = std::env::temp_dir().join(format!("grouppoly-cli-rank-{}.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    assert_eq!(run(&["rank", "--group", "symmetric:3^2", "--gens", &data("hs3.gens"), "--json", &p]).status.code(), Some(0));
    let o = run(&["charpoly", "--rank-table", &p]);
    std::fs::remove_file(&path).ok();
    assert!(stdout(&o).contains("χ(t) = t - t^{log_6 3}"), "{}", stdout(&o));
}

#[test]
fn hypergraph_flows_and_colorings() {
    let h = data("example.hyper");
    let o = run(&["hypergraph", "flow", "--hypergraph", &h, "--group", "cyclic:2,cyclic:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z/3: brute 468 formula 468 ok"), "{}", stdout(&o));
    let o = run(&["hypergraph", "chromatic", "--hypergraph", &h, "--lambda", "3"]);
    assert!(stdout(&o).contains("λ=3: brute 36 formula 36 ok"));
    let o = run(&["hypergraph", "flow", "--hypergraph", &h, "--group", "symmetric:3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn complex_dump_lists_faces_and_boundaries() {
    let o = run(&["laplacian", "dump", "--group", "cyclic:6^3", "--gens", &data("chen.gens")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims = v["dimensions"].as_array().unwrap();
    assert_eq!(dims.len(), 4);
    assert_eq!(dims[1]["faces"].as_array().unwrap().len(), 3);
    assert_eq!(dims[2]["faces"].as_array().unwrap().len(), 6);
    assert!(dims[2]["boundary"].as_array().unwrap().iter().all(|t| t[2] == 1 || t[2] == -1));
}
