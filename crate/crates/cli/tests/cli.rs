use std::process::{Command, Output};

use serde_json::Value;

fn heisospec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisospec")).args(args).env_remove("HEISOSPEC_OUT_DIR").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_octonion_passes() {
    let out = heisospec(&["verify", "--kind", "octonion", "-p", "1", "-q", "1", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["algebra"]["p"], 1);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_quaternion_passes() {
    let out = heisospec(&["verify", "--kind", "quaternion", "-p", "3", "-q", "0", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn empty_algebra_is_a_usage_error() {
    assert_eq!(heisospec(&["verify", "-p", "0", "-q", "0"]).status.code(), Some(2));
}

#[test]
fn float_alpha_is_rejected() {
    let out = heisospec(&["intertwine", "--alpha", "0.5,0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = heisospec(&["intertwine", "--alpha", "1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn intertwine_tables_are_zero() {
    let out = heisospec(&["intertwine", "-d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["residual"]["nonzero_per_degree"], serde_json::json!([0, 0, 0, 0, 0]));
    assert_eq!(v["residual"]["monomials_checked"], 4845);
    assert_eq!(v["residual"]["exact"], true);

    let out = heisospec(&["intertwine", "-d", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let out = heisospec(&["intertwine", "-d", "3", "--coeff-c", "1", "--exact", "i64"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["config"]["mode"]["coeff_c"], "1");
}

#[test]
fn oblique_modes_fall_back_to_floating_point() {
    let out = heisospec(&["intertwine", "-d", "2", "--alpha", "1,-1,0,0,2,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["residual"]["exact"], false);
}

#[test]
fn spectrum_pair_and_csv() {
    let out = heisospec(&["spectrum", "--pair", "--kind", "quaternion", "-p", "1", "-q", "1", "-d", "3", "-k", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["max_abs_diff"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["spectra"].as_array().unwrap().len(), 2);
    assert_eq!(v["spectra"][1]["algebra"]["p"], 2);

    let out = heisospec(&["spectrum", "--kind", "quaternion", "-p", "1", "-q", "0", "-d", "2", "-k", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "algebra,p,q,alpha,degree,index,eigenvalue");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("quaternion,1,0,\"1,0,0\",2,0,"));
}

#[test]
fn spectrum_over_cap_is_a_resource_error() {
    let out = heisospec(&["spectrum", "-d", "4", "--cap", "2000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_and_report() {
    let v = json(&heisospec(&["classify", "--kind", "octonion", "-p", "2", "-q", "0"]));
    assert_eq!(v["profile"]["commutative"], true);
    let v = json(&heisospec(&["classify", "--dim-z", "7", "--dim-v", "16", "--non-isotypic"]));
    assert_eq!(v["profile"]["go_space"], false);
    assert_eq!(heisospec(&["classify", "--dim-z", "5", "--dim-v", "12"]).status.code(), Some(2));

    let v = json(&heisospec(&["report", "--kind", "octonion", "--pair", "1,1:2,0"]));
    assert_eq!(
        v["report"]["inaudible_properties"],
        serde_json::json!(["commutative", "weakly_symmetric_broad", "weakly_symmetric_narrow", "go_space"])
    );
    assert_eq!(v["report"]["scope"], "non_compact");
    assert_eq!(heisospec(&["report", "--pair", "1,1:2,0", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(heisospec(&["report", "--pair", "1,1"]).status.code(), Some(2));
}

#[test]
fn output_directory_from_environment_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_heisospec"))
            .args(["report", "--pair", "2,1:3,0"])
            .env("HEISOSPEC_OUT_DIR", dir.path())
            .output()
            .unwrap()
    };
    assert_eq!(run().status.code(), Some(0));
    let first = std::fs::read(dir.path().join("report.json")).unwrap();
    assert_eq!(run().status.code(), Some(0));
    let second = std::fs::read(dir.path().join("report.json")).unwrap();
    assert_eq!(first, second);

    let file = dir.path().join("nested/report.txt");
    let out = heisospec(&["report", "--pair", "1,1:2,0", "--format", "text", "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(file).unwrap().contains("inaudible: commutative"));
}
