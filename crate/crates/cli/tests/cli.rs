use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn toromaps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toromaps")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.v1.schema.json"))
}

fn assert_schema(name: &str, doc: &Value) {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path(name)).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn cover_e1_double() {
    let out = toromaps(&["cover", "E1", "1", "0", "0", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let cert = stdout_json(&out);
    assert_eq!(cert["m"], 2);
    assert_eq!(cert["n"], 2);
    assert_eq!(cert["vertex_map"].as_array().unwrap().len(), 16);
    assert_schema("certificate", &cert);
}

#[test]
fn analyze_square_grid() {
    let doc = stdout_json(&toromaps(&["analyze", "T44", "3", "0", "0", "3"]));
    assert_eq!((doc["vertices"].as_u64(), doc["edges"].as_u64(), doc["faces"].as_u64()), (Some(9), Some(18), Some(9)));
    assert_eq!(doc["vertex_transitive"], true);
    assert_schema("analyze", &doc);

    let text = toromaps(&["analyze", "4.4.4.4", "3", "0", "0", "3", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.lines().any(|l| l == "vertices: 9"));
}

#[test]
fn analyze_non_transitive_witness() {
    let doc = stdout_json(&toromaps(&["analyze", "E3", "1", "1", "0", "4"]));
    assert_eq!(doc["polyhedral"], true);
    assert_eq!(doc["vertex_transitive"], false);
    assert!(doc["vertex_orbits"].as_u64().unwrap() > 1);
    assert_schema("analyze", &doc);
}

#[test]
fn negative_entries_accepted() {
    let out = toromaps(&["analyze", "E3", "2", "-1", "-1", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["M"], serde_json::json!([2, -1, -1, 3]));
}

#[test]
fn cover_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (tiling, m) in [("E3", ["2", "1", "0", "2"]), ("E7", ["1", "1", "-1", "1"]), ("3.3.3.4.4", ["2", "1", "1", "2"])] {
        let path = dir.path().join(format!("{tiling}.json"));
        let mut args = vec!["cover", tiling];
        args.extend(m);
        args.extend(["--out", path.to_str().unwrap()]);
        assert_eq!(code(&toromaps(&args)), 0);
        let out = toromaps(&["verify", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
        let report = stdout_json(&out);
        assert_eq!(report["passed"], true);
        assert_schema("verify", &report);
    }
}

#[test]
fn cover_with_r() {
    let cert = stdout_json(&toromaps(&["cover", "E6", "1", "0", "0", "3", "--r", "2"]));
    assert_eq!((cert["m"].as_i64(), cert["n"].as_i64()), (Some(6), Some(12)));
    assert_eq!(code(&toromaps(&["cover", "E6", "1", "0", "0", "3", "--r", "0"])), 2);
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let out = toromaps(&["cover", "E3", "2", "1", "0", "2"]);
    let mut cert = stdout_json(&out);
    let vm = cert["vertex_map"].as_array_mut().unwrap();
    let other = (1..vm.len()).find(|&i| vm[i] != vm[0]).unwrap();
    vm.swap(0, other);
    std::fs::write(&path, cert.to_string()).unwrap();
    let out = toromaps(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let report = stdout_json(&out);
    assert_eq!(report["passed"], false);
    assert!(report["failures"].as_array().unwrap().iter().any(|f| f["check"] == "adjacency"));
    assert_schema("verify", &report);

    cert["n"] = serde_json::json!(3);
    std::fs::write(&path, cert.to_string()).unwrap();
    assert_eq!(code(&toromaps(&["verify", path.to_str().unwrap()])), 1);
}

#[test]
fn search_finds_witnesses() {
    let out = toromaps(&["search-nonvt", "E2", "--det-bound", "12"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert!(doc["count"].as_u64().unwrap() >= 1);
    assert_schema("search", &doc);
    assert_eq!(code(&toromaps(&["search-nonvt", "T44", "--det-bound", "5"])), 2);
}

#[test]
fn batch_is_deterministic_and_valid() {
    let args = ["batch", "--samples", "3", "--seed", "5"];
    let (a, b) = (toromaps(&args), toromaps(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = stdout_json(&a);
    assert_eq!(doc["tilings"].as_array().unwrap().len(), 11);
    assert_schema("batch", &doc);
    let other = toromaps(&["batch", "--samples", "3", "--seed", "6"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn info_dumps_templates() {
    for tiling in ["T36", "T44", "T63", "T33344", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "3.4.6.4"] {
        let out = toromaps(&["info", tiling]);
        assert_eq!(code(&out), 0);
        assert_schema("info", &stdout_json(&out));
    }
    let e7 = stdout_json(&toromaps(&["info", "4.6.12"]));
    assert_eq!(e7["tiling"], "E7");
    assert_eq!(e7["reps"].as_array().unwrap().len(), 12);
    assert!(e7["point_group"].as_array().unwrap().iter().any(|g| g["kind"] == "reflection"));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e5.svg");
    let out = toromaps(&["render", "E5", "2", "0", "1", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<svg") && svg.contains(r#"version="1.1""#));
    assert!(svg.contains("<polygon"));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["analyze", "E9", "1", "0", "0", "1"][..],
        &["analyze", "E1", "1", "2", "2", "4"],
        &["analyze", "E1", "1", "0", "0"],
        &["cover", "E1", "100000", "0", "0", "1"],
        &["batch", "--max-entry", "0"],
        &["verify", "/nonexistent/cert.json"],
    ] {
        let out = toromaps(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
