use std::process::{Command, Output};

use serde_json::Value;

fn weil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weil"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn modular_linear_plane_gives_minus_d2() {
    let out = weil(&["modular", "--spec", &fixture("linear_plane.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let delta = &v["result"]["modular_field"]["components"];
    assert_eq!(delta.as_array().unwrap().len(), 1);
    assert_eq!(delta[0]["upper"], serde_json::json!([2]));
    assert_eq!(delta[0]["poly"][0]["c"], "-1");
    let lifted = &v["result"]["lifts"][0];
    assert_eq!(lifted["equal"], true);
    assert_eq!(lifted["lhs"]["components"][0]["upper"], serde_json::json!([4]));
    assert_eq!(lifted["lhs"]["components"][0]["poly"][0]["c"], "-2");
}

#[test]
fn complete_lift_of_so3_matches_closed_form() {
    let out = weil(&["lift", "--spec", &fixture("dual_so3.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let first = &v["result"]["lifts"][0];
    assert_eq!(first["lift"], "complete");
    // (w^C)^{iajb} = (w^{ij})^s γ_s^{ab}: nine components on T R^3 for R(ε)
    assert_eq!(first["field"]["components"].as_array().unwrap().len(), 9);
    assert_eq!(first["field"]["dim"], 6);
}

#[test]
fn algebra_validate_and_prolong_pass() {
    for cmd in ["algebra-validate", "prolong", "bracket"] {
        let out = weil(&[cmd, "--spec", &fixture("dual_so3.json")]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{cmd}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn input_errors_exit_2() {
    let bad = std::env::temp_dir().join("weil-bad-rational.json");
    std::fs::write(
        &bad,
        r#"{"algebra": {"plural": 1}, "frobenius": {"p": ["1/0", "1"]}, "manifold_dim": 1}"#,
    )
    .unwrap();
    let out = weil(&["lift", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.frobenius.p[0]"));
    assert_eq!(weil(&["lift"]).status.code(), Some(2));
    assert_eq!(
        weil(&["lift", "--spec", "/nonexistent/spec.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_reports_the_literal_determinant_claim_as_the_only_failure() {
    let out = weil(&["verify", "--seed", "7", "--cases", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failed: Vec<&str> = v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["frobenius.truncated_determinant"]);
    let cx = &v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "frobenius.truncated_determinant")
        .unwrap()["counterexample"];
    assert!(cx["detail"].as_str().unwrap().contains("-p1^2"), "{cx}");
}
