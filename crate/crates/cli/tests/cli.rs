use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn instances() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn gitfan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gitfan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn instance(name: &str) -> String {
    instances().join(name).to_string_lossy().into_owned()
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn s2_fan_has_four_cones() {
    let r = report(&gitfan(&["fan", "--instance", &instance("s2.json")]));
    assert_eq!(r["format"], json!(1));
    assert_eq!(r["mode"], json!("oracle(p=2)"));
    assert_eq!(r["result"]["cone_count"], json!(4));
    let rays: Vec<&Value> = r["result"]["fan"]["cones"].as_array().unwrap().iter().map(|c| &c["rays"]).collect();
    assert!(rays.contains(&&json!([[1, 0, -1]])));
    assert!(rays.contains(&&json!([[0, 1, -1], [1, 0, -1]])));
}

#[test]
fn a2_effective_cone() {
    let r = report(&gitfan(&["effective-cone", "--instance", &instance("a2.json")]));
    assert_eq!(r["result"]["cone"]["rays"], json!([[1, -1]]));
}

#[test]
fn unknown_command_exits_2() {
    let out = gitfan(&["frobnicate", "--instance", &instance("s2.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown command"));
}

#[test]
fn missing_weight_exits_2() {
    let out = gitfan(&["git-cone", "--instance", &instance("s2.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--weight"));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format\": 1,\n  \"vertices\": [\"x\",]\n}").unwrap();
    let out = gitfan(&["fan", "--instance", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let negative = dir.path().join("neg.json");
    std::fs::write(
        &negative,
        r#"{"format": 1, "vertices": ["x", "y"], "arrows": [{"id": "a", "tail": "x", "head": "y"}], "beta": {"x": -1, "y": 1}}"#,
    )
    .unwrap();
    let out = gitfan(&["fan", "--instance", negative.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative dimension"));

    let out = gitfan(&["fan", "--instance", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn engine_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.json");
    std::fs::write(
        &path,
        r#"{"format": 1, "vertices": ["x", "y"], "arrows": [{"id": "a", "tail": "x", "head": "y"}],
            "beta": {"x": 1, "y": 1}, "weights": {"wrong": {"x": "-1", "y": "1"}}}"#,
    )
    .unwrap();
    let out = gitfan(&["decompose", "--instance", path.to_str().unwrap(), "--weight", "wrong"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["fan", "--instance", &instance("square.json"), "--mode", "sampled", "--seed", "5"];
    let a = gitfan(&args);
    let b = gitfan(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("timing"));
}

#[test]
fn out_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = gitfan(&[
        "verify",
        "--instance",
        &instance("s2.json"),
        "--mode",
        "sampled",
        "--p",
        "101",
        "--samples",
        "16",
        "--out",
        out_path.to_str().unwrap(),
        "--timing",
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r["mode"], json!("sampled(p=101,samples=16,seed=0)"));
    assert!(r["timing"]["ms"].is_u64());
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == json!(true)));
}

#[test]
fn weight_and_rep_commands() {
    let s2 = instance("s2.json");
    let r = report(&gitfan(&["equivalent", "--instance", &s2, "--weight", "interior", "--weight", "half"]));
    assert_eq!(r["result"]["equivalent"], json!(true));
    let r = report(&gitfan(&["git-cone", "--instance", &s2, "--weight", "ray"]));
    assert_eq!(r["result"]["cone"]["rays"], json!([[1, 0, -1]]));
    let r = report(&gitfan(&["orbit-cone", "--instance", &s2, "--rep", "ones"]));
    assert_eq!(r["result"]["cone"]["dim"], json!(2));
    let r = report(&gitfan(&["decompose", "--instance", &instance("k2.json"), "--weight", "theta"]));
    assert_eq!(r["result"]["parts"], json!([{"multiplicity": 2, "dim": [1, 1]}]));
    let r = report(&gitfan(&["walls", "--instance", &instance("square.json")]));
    assert!(r["result"]["classes"].as_array().unwrap().len() >= 2);
}
