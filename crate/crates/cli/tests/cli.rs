use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use shapefib::format::Document;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shapefib")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

#[test]
fn classify_hexagon_over_triangle() {
    let (code, v) = json(&["classify", &data("c6_c3.sf")]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["result"]["shape1"]["etale"]["verdict"], "true");
    assert_eq!(v["result"]["shape1"]["fibration"]["verdict"], "true");
    assert_eq!(v["result"]["shape1"]["equivalence"]["verdict"], "false");
}

#[test]
fn classify_fold_fails() {
    let out = run(&["classify", &data("fold.sf")]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("shape1 fibration fails over: vertex a, edge e"), "{text}");
}

#[test]
fn enumerate_three_sheeted_covers_of_the_circle() {
    let (code, v) = json(&["covers", "enumerate", &data("circle.sf"), "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 6);
    assert_eq!(v["result"]["covers"].as_array().unwrap().len(), 6);
    let text = String::from_utf8(run(&["covers", "enumerate", &data("circle.sf"), "--n", "3"]).stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("components=")).count(), 6);
}

#[test]
fn total_space_of_split_monodromy_has_two_components() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("total.dot");
    let out = run(&["covers", "total", &data("split_five.sf"), "--dot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(shapefib::dot::cluster_count(&dot), 2);
    assert_eq!(dot.matches("->").count(), 5);
}

#[test]
fn emitted_documents_parse_back() {
    for (args, file) in [
        (vec!["covers", "total"], "split_five.sf"),
        (vec!["factor0"], "fold.sf"),
        (vec!["covers", "monodromy"], "c6_c3.sf"),
    ] {
        let file = data(file);
        let mut all = args.clone();
        all.push(&file);
        let (code, v) = json(&all);
        assert_eq!(code, 0, "{args:?}");
        let text = v["result"]["document"].as_str().unwrap();
        let doc = Document::parse(text).unwrap();
        assert_eq!(doc.serialize().unwrap(), text);
    }
}

#[test]
fn verify_shape_and_universal_ball() {
    let (code, v) = json(&["covers", "verify-shape", &data("split_five.sf")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["component_count"], 2);
    let (code, v) = json(&["covers", "universal-ball", &data("split_five.sf"), "--radius", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["vertices"], 7);
    assert_eq!(v["result"]["lifts"][0]["lifts"], 1);
}

#[test]
fn star_swap_quotient() {
    let (code, v) = json(&["quotient", "shape", &data("star_swap.sf")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["is_delooping"], true);
    let (code, _) = json(&["quotient", "verify", &data("star_swap.sf")]);
    assert_eq!(code, 0);
}

#[test]
fn functor_sections() {
    let (code, v) = json(&["classify", &data("pt_bz2.sf")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["flags"]["equivalence"]["verdict"], "true");
    let (code, _) = json(&["classify", &data("pt_bz2.sf"), "--level", "-1"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sf");
    std::fs::write(&bad, "graph: X\n  vertices: a\n  edge: e a b\n").unwrap();
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
    assert_eq!(run(&["classify"]).status.code(), Some(64));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(run(&["classify", &data("c6_c3.sf"), "--name", "nope"]).status.code(), Some(64));
    // a size bound leaves the question undecided, and the message names the flag
    let out = run(&["quotient", "shape", &data("star_swap.sf"), "--max-group", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("--max-group"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["--format", "json", "suite", "nine-way", "--samples", "40", "--seed", "9"],
        vec!["--format", "json", "suite", "closure", "--samples", "40", "--seed", "9"],
        vec!["--format", "json", "classify", "DATA"],
    ] {
        let file = data("c6_c3.sf");
        let args: Vec<&str> = args.iter().map(|a| if *a == "DATA" { file.as_str() } else { a }).collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        // the machine format round-trips
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again.as_bytes(), a.stdout.as_slice());
    }
}
