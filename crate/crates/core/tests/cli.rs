use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn csl(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_csl"))
        .args(args)
        .env_remove("CSL_OUTPUT")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, _) = csl(&full);
    (code, serde_json::from_str(&out).expect("json output"))
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn oc_check_pythagorean_rotation() {
    let (code, v) = json(&["oc-check", "--module", "Zn:2", "--isometry", "[[3/5,-4/5],[4/5,3/5]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["commensurate"], Value::Bool(true));
}

#[test]
fn decompose_identity_is_empty() {
    let (code, v) = json(&["decompose", "--module", "Zn:2", "--isometry", "identity"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 0);
    assert_eq!(v["vectors"], Value::Array(vec![]));
    assert_eq!(v["verified"], Value::Bool(true));
}

#[test]
fn gram_check_counterexample() {
    let path = data("quartic_counterexample.json");
    let (code, v) = json(&["gram-check", "--module", &path]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["triple"], serde_json::json!([2, 2, 1]));
    let (code, out, _) = csl(&["gram-check", "--module", &path]);
    assert_eq!(code, 1);
    assert!(out.contains("(2,2,1)"));
}

#[test]
fn index_and_decompose_outputs() {
    let (code, v) = json(&["index", "--module", "name:Zn:2", "--isometry", "[[3/5,-4/5],[4/5,3/5]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["index"], "5");
    assert_eq!(v["index_in_image"], "5");
    let (code, v) = json(&["decompose", "--module", "Zn:2", "--isometry", "[[0,-1],[1,0]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["vectors"], serde_json::json!([[["1"], ["-1"]], [["0"], ["1"]]]));
}

#[test]
fn negative_and_error_statuses() {
    let (code, v) = json(&["oc-check", "--module", "Zn:2", "--isometry", "[[1,1],[0,1]]"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "NotOrthogonal");
    let (code, v) = json(&["validate", "--module", "name:E8"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "UnknownKey");
    let (code, v) = json(&["validate", "--module", "{\"basis_matrix\": [[\"1\", \"q\"], [\"0\", \"1\"]]}"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "ParseError");
    assert_eq!(v["path"], "$.basis_matrix[0][1]");
    let (code, _, err) = csl(&["validate", "--module", "/nonexistent/module.json"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("ParseError"));
    let quartic = data("quartic_counterexample.json");
    let (code, v) = json(&["decompose", "--module", &quartic, "--isometry", "identity"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "PreconditionGramCriterion");
}

#[test]
fn commensurate_subcommand() {
    let (code, v) = json(&["commensurate", "--module", "Zn:2", "--other", "{\"basis_matrix\": [[2,0],[0,3]]}"]);
    assert_eq!(code, 0);
    assert_eq!(v["transition"], serde_json::json!([[["1/2"], ["0"]], [["0"], ["1/3"]]]));
}

#[test]
fn catalog_export_round_trips_through_files() {
    let (code, list) = json(&["catalog", "list"]);
    assert_eq!(code, 0);
    let keys: Vec<String> = list.as_array().unwrap().iter().map(|e| e["key"].as_str().unwrap().to_string()).collect();
    assert!(keys.len() >= 8);
    let dir = std::env::temp_dir().join(format!("csl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for key in &keys {
        let (code, out, _) = csl(&["--json", "catalog", "get", key]);
        assert_eq!(code, 0);
        let file = dir.join(format!("{}.json", key.replace(':', "_")));
        std::fs::write(&file, &out).unwrap();
        let path = file.to_string_lossy().into_owned();
        for sub in [["validate", "--module"], ["gram-check", "--module"]] {
            let a = csl(&["--json", sub[0], sub[1], key]);
            let b = csl(&["--json", sub[0], sub[1], &path]);
            assert_eq!(a.0, b.0, "{key}");
            assert_eq!(a.1, b.1, "{key}");
        }
        let a = csl(&["--json", "decompose", "--module", key, "--isometry", "identity"]);
        let b = csl(&["--json", "decompose", "--module", &path, "--isometry", "identity"]);
        assert_eq!(a, b);
        let (code, v) = json(&["commensurate", "--module", key, "--other", &path]);
        assert_eq!(code, 0, "{key}");
        assert_eq!(v["commensurate"], Value::Bool(true));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_is_byte_deterministic() {
    let a = csl(&["--json", "catalog", "get", "icosian"]);
    let b = csl(&["--json", "catalog", "get", "icosian"]);
    assert_eq!(a.1, b.1);
    let env = Command::new(env!("CARGO_BIN_EXE_csl"))
        .args(["catalog", "get", "icosian"])
        .env("CSL_OUTPUT", "json")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), a.1);
}
