use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lietower")).args(args).output().expect("binary runs")
}

fn fixture(stem: &str) -> String {
    fixtures().join(stem).to_string_lossy().into_owned()
}

fn machine(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn s2_tower_reports_pi2_and_pi3() {
    let v = machine(&["tower", &fixture("s2"), "--stages", "5", "--degrees", "4"]);
    let dims = &v["dims"];
    assert_eq!(dims[1], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(dims[2], serde_json::json!([0, 1, 1, 1]));
    assert_eq!(dims[3], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(v["stabilization"][2]["stable_from"], 3);
}

#[test]
fn human_tower_mentions_the_table() {
    let out = run(&["tower", &fixture("s2.json")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("π3"));
    assert!(text.contains("stable from stage 3"));
}

#[test]
fn broken_input_exits_one_and_names_the_simplex() {
    let out = run(&["tower", &fixture("broken")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("simplex e:"), "{err}");
}

#[test]
fn missing_file_and_bad_flags_exit_one() {
    assert_eq!(run(&["tower", "no/such/file"]).status.code(), Some(1));
    assert_eq!(run(&["tower", &fixture("s1"), "--stages", "1"]).status.code(), Some(1));
    assert_eq!(run(&["tower", &fixture("s1"), "--format", "xml"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn unreduced_input_is_an_input_error() {
    let dir = std::env::temp_dir().join(format!("lietower-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two_points.json");
    std::fs::write(&path, r#"{"name": "two", "simplices": {"0": ["p", "q"]}}"#).unwrap();
    let out = run(&["tower", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn machine_reports_are_byte_identical() {
    for args in [
        vec!["tower", "wedge"],
        vec!["model", "torus"],
        vec!["pi", "wedge"],
        vec!["homology", "s3"],
        vec!["minimal", "wedge"],
    ] {
        let path = fixture(args[1]);
        let full = [args[0], path.as_str(), "--format", "machine", "--stages", "3"];
        let a = run(&full);
        let b = run(&full);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("lietower-out-{}.json", std::process::id()));
    let out = run(&["pi", &fixture("wedge"), "--stages", "3", "--format", "machine", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["group"]["dim"], 3);
    assert_eq!(v["group"]["class"], 2);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn model_and_homology_of_the_circle() {
    let v = machine(&["model", &fixture("s1"), "--truncation", "3"]);
    let gens = v["global"]["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 2);
    assert_eq!(gens[0]["mc"], true);
    let h = machine(&["homology", &fixture("s1")]);
    assert_eq!(h["reduced"], serde_json::json!([0, 1]));
    assert_eq!(h["indecomposables"], serde_json::json!([[0, 1]]));
}

#[test]
fn minimal_model_of_the_wedge_stage() {
    let v = machine(&["minimal", &fixture("wedge"), "--stages", "2", "--cutoff", "1"]);
    let adjoined = v["adjoined"].as_array().unwrap();
    assert_eq!(adjoined.len(), 1);
    assert!(v["checks"]["graded_isomorphism"].as_bool().unwrap());
}

#[test]
fn simplex_model_dump() {
    let out = run(&["dump-simplex-model", "1", "--truncation", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("a01 : 0"));
    assert!(text.contains("a0 : -1 mc"));
}

#[test]
fn verify_exits_zero() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8(out.stdout).unwrap().contains("all checks passed"));
}
