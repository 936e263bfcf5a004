use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mostar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mostar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    if let Err(e) = v.validate(doc) {
        panic!("schema violation: {e}\n{doc:#}");
    }
}

#[test]
fn family_then_compute_round_trip() {
    let dir = std::env::temp_dir().join(format!("mostar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("k24.txt");
    let out = mostar(&["family", "kab", "2", "4", "-o", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("closed_form = 16"));

    let out = mostar(&["compute", file.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("mostar = 16"));
    assert_eq!(text.lines().count(), 1 + 8);

    let out = mostar(&["--format", "json", "compute", file.to_str().unwrap()]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["mostar"], 16);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 8);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn split_join_family_to_stdout() {
    let out = mostar(&["family", "split-join", "2", "6"]);
    assert!(out.status.success());
    let g = mostar::edgelist::parse(&stdout(&out)).unwrap();
    assert_eq!(mostar::mostar_index(&g), 24);
    assert!(String::from_utf8_lossy(&out.stderr).contains("closed_form = 24"));
}

#[test]
fn certify_output_matches_schema() {
    let v = schema("certify.schema.json");
    for (n, k) in [(6, 1), (30, 6), (30, 7), (60, 30)] {
        let out = mostar(&["certify", &n.to_string(), &k.to_string(), "--format", "json"]);
        assert!(out.status.success(), "({n},{k})");
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_valid(&v, &doc);
        assert_eq!(doc["passed"], true);
    }
    let doc: Value = serde_json::from_str(&stdout(&mostar(&["certify", "30", "6", "--format", "json"]))).unwrap();
    assert_eq!(doc["case"], "LOW_ALPHA");
    assert_eq!((doc["p"].as_str(), doc["q"].as_str()), (Some("1/10"), Some("1/2")));
    let doc: Value = serde_json::from_str(&stdout(&mostar(&["certify", "30", "7", "--format", "json"]))).unwrap();
    assert_eq!(doc["case"], "HIGH_ALPHA");
}

#[test]
fn certify_rejects_large_side_with_hint() {
    let out = mostar(&["certify", "10", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["status"], "error");
    assert!(err["error"].as_str().unwrap().contains("k = 3"));
}

#[test]
fn search_output_matches_schema() {
    let v = schema("search.schema.json");
    for class in ["bipartite", "split"] {
        let out = mostar(&["search", class, "6", "--format", "json"]);
        assert!(out.status.success(), "{class}");
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_valid(&v, &doc);
        assert_eq!(doc["violations"], 0);
    }
    let doc: Value = serde_json::from_str(&stdout(&mostar(&["search", "bipartite", "6", "--format", "json"]))).unwrap();
    // K_{1,5} is the maximizer at n = 6
    assert_eq!(doc["max_mostar"], 20);
}

#[test]
fn search_guard_needs_force() {
    let out = mostar(&["search", "bipartite", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
}

#[test]
fn margins_and_scan() {
    let out = mostar(&["margins", "--grid", "1000"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("function,min,argmin\nq,"));

    let out = mostar(&["conjecture19", "10", "--format", "json"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["smallest_flagged"], 6);
}

#[test]
fn lp_and_splitbound_tables() {
    let out = mostar(&["lp", "5", "--upto"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 1 + 1 + 2 + 2);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));

    let out = mostar(&["lp", "4", "2", "--dump"]);
    let lp = mostar::lp::LinearProgram::from_text(&stdout(&out)).unwrap();
    assert_eq!(lp, mostar::lp::build_primal(4, 2).unwrap());

    let out = mostar(&["splitbound", "6", "2", "--sweep-m"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1 + 9);
    assert!(stdout(&out).contains("\n6,2,7,49/2,24.5,49/2,32/1,High,7/1,3/4\n"));
}

#[test]
fn gap_table() {
    let out = mostar(&["gap", "complete-bipartite", "--n", "10..20"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1 + 11);
    let out = mostar(&["gap", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_is_reported() {
    let dir = std::env::temp_dir().join(format!("mostar-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.txt");
    std::fs::write(&file, "3 1\n0 7\n").unwrap();
    let out = mostar(&["compute", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert!(err["error"].as_str().unwrap().contains("line 2"));
    std::fs::remove_dir_all(&dir).ok();
}
