use std::path::Path;
use std::process::{Command, Output};

fn bogo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bogo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn write_spec(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = bogo(args);
    assert!(out.status.success());
    let path = dir.join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_string_lossy().into_owned()
}

const IDENTITY: &str = r#"{"window_cols": 0, "tail_shift": 0, "block": [], "bogoliubov": true}"#;

#[test]
fn inspect_identity_and_curve() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.json");
    std::fs::write(&id, IDENTITY).unwrap();
    let out = bogo(&["inspect", id.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["info"]["index"], 0);
    assert_eq!(r["info"]["statistical_dimension"], 1);

    let v = write_spec(dir.path(), "v.json", &["spec", "curve", "--phi", "0.39269908169872414"]);
    let r = json(&bogo(&["inspect", &v, "--json"]));
    assert_eq!(r["info"]["index"], 2);
    assert_eq!(r["info"]["statistical_dimension"], 2);
    let theta = r["info"]["spectral_pairs"][0].as_f64().unwrap();
    let expect = (1.0 + (std::f64::consts::PI / 4.0).sin()) / 2.0;
    assert!((theta - expect).abs() < 1e-10);
}

#[test]
fn implement_and_decompose_pass() {
    let dir = tempfile::tempdir().unwrap();
    let v = write_spec(dir.path(), "v.json", &["spec", "curve", "--phi", "0.39269908169872414"]);
    let out = bogo(&["implement", &v, "--vectors", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
    let out = bogo(&["decompose", &v, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let id = dir.path().join("id.json");
    std::fs::write(&id, IDENTITY).unwrap();
    let out = bogo(&["implement", id.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["info"]["family_size"], 1);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let v = write_spec(dir.path(), "r.json", &["spec", "random", "--index", "4", "--seed", "9"]);
    let strip = |o: Output| {
        let mut r = json(&o);
        r["timing"] = serde_json::Value::Null;
        r
    };
    let a = strip(bogo(&["implement", &v, "--vectors", "3", "--seed", "5", "--json"]));
    let b = strip(bogo(&["implement", &v, "--vectors", "3", "--seed", "5", "--json"]));
    assert_eq!(a, b);
    assert_eq!(a["seed"], 5);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let odd = dir.path().join("odd.json");
    std::fs::write(&odd, r#"{"window_cols": 0, "tail_shift": 1, "block": [], "bogoliubov": true}"#).unwrap();
    let out = bogo(&["implement", odd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported: odd index out of scope"));

    // a non-isometric block violates REL1
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"window_cols": 2, "tail_shift": 0, "block": [[[0.9,0],[0,0]],[[0,0],[1,0]]], "bogoliubov": true}"#,
    )
    .unwrap();
    let out = bogo(&["implement", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("REL1"));

    let out = bogo(&["inspect", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_checks_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let v = write_spec(dir.path(), "v.json", &["spec", "curve", "--phi", "0.39269908169872414"]);
    let out = bogo(&["implement", &v, "--vectors", "3", "--tol", "0", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn watatani_index_four() {
    let out = bogo(&["watatani", "8", "2", "--samples", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["info"]["expected_index"], 4);
    assert_eq!(r["pass"], true);
}

#[test]
fn verify_all_passes() {
    let out = bogo(&["verify-all", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    for i in 1..=13 {
        assert_eq!(r["info"][format!("criterion_{i}")], "pass");
    }
}
