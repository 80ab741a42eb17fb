use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn knalg(dir: &Path, config: &str, args: &[&str]) -> Output {
    let cfg = dir.join("job.json");
    std::fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_knalg")).arg("--config").arg(&cfg).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn laurent_basis_lists_monomials() {
    let d = tempfile::tempdir().unwrap();
    let o = knalg(d.path(), r#"{"punctures":["0"],"window":[-2,2]}"#, &["basis"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let f: Vec<&str> = v["elements"].as_array().unwrap().iter().map(|e| e["function"].as_str().unwrap()).collect();
    assert_eq!(f, ["(1)/(z^2)", "(1)/(z)", "1", "z", "z^2"]);
    let orders: Vec<i64> = v["elements"].as_array().unwrap().iter().map(|e| e["orders"][0].as_i64().unwrap()).collect();
    assert_eq!(orders, [-2, -1, 0, 1, 2]);
}

#[test]
fn two_point_vector_field_orders() {
    let d = tempfile::tempdir().unwrap();
    let o = knalg(d.path(), r#"{"weight":-1,"window":[1,1]}"#, &["basis"]);
    let v = json(&o);
    let e = &v["elements"][0];
    assert_eq!(e["orders"], serde_json::json!([2, 3]));
    assert_eq!(e["order_at_infinity"], serde_json::json!(-3));
}

#[test]
fn malformed_puncture_is_a_config_error() {
    let d = tempfile::tempdir().unwrap();
    let o = knalg(d.path(), r#"{"punctures":["1/0x"]}"#, &["basis"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("puncture"));
}

#[test]
fn repeated_punctures_and_unknown_fields_are_config_errors() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(knalg(d.path(), r#"{"punctures":["1","1"]}"#, &["basis"]).status.code(), Some(2));
    assert_eq!(knalg(d.path(), r#"{"bogus":1}"#, &["basis"]).status.code(), Some(2));
    assert_eq!(knalg(d.path(), "{", &["basis"]).status.code(), Some(2));
}

#[test]
fn unknown_suite_and_usage_errors() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(knalg(d.path(), "{}", &["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(knalg(d.path(), "{}", &["export", "nope"]).status.code(), Some(2));
    assert_eq!(knalg(d.path(), "{}", &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let d = tempfile::tempdir().unwrap();
    let o = knalg(d.path(), "{}", &["--out", d.path().join("missing/x.json").to_str().unwrap(), "basis"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_knalg")).args(["--config", d.path().join("absent.json").to_str().unwrap(), "basis"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn duality_suite_passes_at_two_points() {
    let d = tempfile::tempdir().unwrap();
    let o = knalg(d.path(), r#"{"window":[-4,4]}"#, &["verify", "--suite", "duality"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn casimir_suite_reports_kernel_and_genericity() {
    let d = tempfile::tempdir().unwrap();
    let o = knalg(d.path(), r#"{"punctures":["0"],"window":[-4,4]}"#, &["verify", "--suite", "casimir"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let kernel = &v["checks"][0];
    assert_eq!(kernel["status"], "PASS");
    assert_eq!(kernel["witness"], "kernel dimension 2, genericity failures at [-1]");
}

#[test]
fn full_verification_on_default_config() {
    let d = tempfile::tempdir().unwrap();
    let o = knalg(d.path(), "{}", &["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn structure_export_is_laurent_and_reproducible() {
    let d = tempfile::tempdir().unwrap();
    let cfg = r#"{"punctures":["0"],"window":[-2,2]}"#;
    let a = d.path().join("a.json");
    let b = d.path().join("b.json");
    assert_eq!(knalg(d.path(), cfg, &["--out", a.to_str().unwrap(), "export", "structure-table"]).status.code(), Some(0));
    assert_eq!(knalg(d.path(), cfg, &["--out", b.to_str().unwrap(), "export", "structure-table"]).status.code(), Some(0));
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    for e in v["entries"].as_array().unwrap() {
        let n = e["lhs"]["degree"].as_i64().unwrap() + e["rhs"]["degree"].as_i64().unwrap();
        assert_eq!(e["result"], serde_json::json!([{ "coefficient": "1/1", "degree": n, "puncture": 1 }]));
    }
}

#[test]
fn virasoro_cocycle_export() {
    let d = tempfile::tempdir().unwrap();
    let o = knalg(d.path(), r#"{"punctures":["0"],"window":[-4,4],"args":{"kind":"vector_field"}}"#, &["export", "cocycle-table"]);
    for e in json(&o)["entries"].as_array().unwrap() {
        let n = e["x"]["degree"].as_i64().unwrap();
        let m = e["y"]["degree"].as_i64().unwrap();
        let want = if n + m == 0 { n * n * n - n } else { 0 };
        assert_eq!(e["value"], format!("{want}/1"));
    }
}

#[test]
fn every_export_target_and_command_runs() {
    let d = tempfile::tempdir().unwrap();
    let cfg = r#"{"window":[-2,2],"args":{"f":"1/z","g":"z/(z-1)","degree":-1,"k":-1,"vector":[{"prefix":[-1]}]}}"#;
    for what in ["structure-table", "cocycle-table", "sugawara-coeffs", "casimir-basis"] {
        let o = knalg(d.path(), cfg, &["export", what]);
        assert_eq!(o.status.code(), Some(0), "{what}");
        assert_eq!(o.stdout, knalg(d.path(), cfg, &["export", what]).stdout);
    }
    for cmd in ["pair", "mult", "bracket", "cocycle", "wedge-act", "sugawara", "casimir"] {
        assert_eq!(knalg(d.path(), cfg, &[cmd]).status.code(), Some(0), "{cmd}");
    }
}
