use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn implic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_implic"))
        .args(args)
        .env_remove("IMPLIC_MAX_N")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = implic(&all);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    (out.status.code().unwrap(), v)
}

#[test]
fn triangle_holds_in_every_class() {
    for class in ["step", "gamma", "positive"] {
        let (code, v) = json(&["check", &data("triangle.imp"), "--class", class]);
        assert_eq!(code, 0, "{class}");
        assert_eq!(v["holds"], true);
        assert_eq!(v["exit_code"], 0);
        assert_eq!(v["schema_version"], 1);
    }
}

#[test]
fn polymatroid_check_refutes_non_shannon_implication() {
    let (code, v) = json(&[
        "check",
        &data("non_shannon.imp"),
        "--class",
        "gamma",
        "--witness",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["h_sigma"], "0");
    assert_eq!(v["witness"]["table"].as_object().unwrap().len(), 16);
    let (code, _) = json(&["check", &data("non_shannon.imp")]);
    assert_eq!(code, 0);
}

#[test]
fn gamma_certificate_is_reported() {
    let (_, v) = json(&["check", &data("triangle.imp"), "--class", "gamma"]);
    assert_eq!(v["certificate"]["verified"], true);
    assert_eq!(v["mode"], "exact");
}

#[test]
fn min_lambda_values() {
    let (code, v) = json(&["minlambda", &data("triangle.imp")]);
    assert_eq!(code, 0);
    assert_eq!(v["lambda"], "1");
    let (code, v) = json(&["minlambda", &data("non_shannon.imp")]);
    assert_eq!(code, 1);
    assert_eq!(v["lambda"], "unbounded");
}

#[test]
fn certify_strategies() {
    let (code, v) = json(&["certify", &data("fd_chain.imp"), "--strategy", "fd"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["bound_claimed"], "1/1");
    assert_eq!(v["result"]["certificate"]["verified"], true);
    let (code, v) = json(&["certify", &data("disjoint.imp"), "--strategy", "disjoint"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["certificate"]["lambda"], "1/1");
    let (code, v) = json(&["certify", &data("fd_chain.imp"), "--strategy", "quadratic"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["bound_claimed"], "1/1");
    // I(A;B) is not saturated over three variables.
    let (code, _) = json(&["certify", &data("triangle.imp"), "--strategy", "quadratic"]);
    assert_eq!(code, 2);
    let (code, v) = json(&["certify", &data("triangle.imp"), "--strategy", "lp"]);
    assert_eq!(code, 0);
    assert_eq!(v["lambda"], "1");
}

#[test]
fn unmet_strategy_precondition_is_a_usage_error() {
    let (code, v) = json(&["certify", &data("triangle.imp"), "--strategy", "fd"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("conditional"));
}

#[test]
fn refuted_implication_has_no_certificate() {
    let (code, v) = json(&["certify", &data("fails.imp")]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["step_function"], "B");
}

#[test]
fn parse_errors_exit_with_two() {
    let out = implic(&["check", &data("malformed.imp")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = implic(&["check", &data("missing.imp")]);
    assert_eq!(out.status.code(), Some(2));
    let out = implic(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn variable_cap_can_only_be_lowered() {
    let out = Command::new(env!("CARGO_BIN_EXE_implic"))
        .args(["check", &data("non_shannon.imp")])
        .env("IMPLIC_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_implic"))
        .args(["check", &data("non_shannon.imp")])
        .env("IMPLIC_MAX_N", "99")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn entropy_degrees() {
    let (code, v) = json(&[
        "entropy",
        "--relation",
        &data("staff.csv"),
        "--all-fds",
        "--max-lhs",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["mode"], "f64");
    let degrees = v["degrees"].as_array().unwrap();
    let find = |label: &str| {
        degrees
            .iter()
            .find(|d| d["constraint"] == label)
            .unwrap()
            .clone()
    };
    assert_eq!(find("H(mgr|dept)")["satisfied"], true);
    assert_eq!(find("H(dept|mgr)")["satisfied"], false);
    assert!(degrees
        .iter()
        .all(|d| d["degree"].as_f64().unwrap() >= -1e-9));
    let (_, v) = json(&[
        "entropy",
        "--relation",
        &data("two_tuples.csv"),
        "--constraint",
        "H(X1|U1)",
    ]);
    assert!((v["degrees"][0]["degree"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn all_mvds_are_enumerated() {
    let (code, v) = json(&[
        "entropy",
        "--relation",
        &data("staff.csv"),
        "--all-mvds",
        "--distinct",
    ]);
    assert_eq!(code, 0);
    // Partitions of 3 attributes into (X, Y, Z) with Y, Z nonempty, up to swapping Y and Z.
    assert_eq!(v["degrees"].as_array().unwrap().len(), 6);
}

#[test]
fn imeasure_of_two_tuples_is_a_unit_atom() {
    let (code, v) = json(&["imeasure", "--relation", &data("two_tuples.csv")]);
    assert_eq!(code, 0);
    let atoms = v["atoms"].as_object().unwrap();
    let nonzero: Vec<_> = atoms
        .iter()
        .filter(|(_, x)| x.as_f64().unwrap().abs() > 1e-9)
        .collect();
    assert_eq!(nonzero.len(), 1);
    assert!((nonzero[0].1.as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn imeasure_of_baskets_counts_equal_baskets() {
    let (code, v) = json(&["imeasure", "--baskets", &data("baskets.txt")]);
    assert_eq!(code, 0);
    let steps = v["step_decomposition"].as_object().unwrap();
    assert_eq!(steps["A,B"], "1");
    assert_eq!(steps["0"], "1");
    assert!(!steps.contains_key("A"));
}

#[test]
fn basket_implication() {
    let (code, v) = json(&[
        "basket",
        "--baskets",
        &data("baskets.txt"),
        &data("basket.imp"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    assert_eq!(v["consequent_bounded_on_data"], true);
}

#[test]
fn demos() {
    let (code, v) = json(&["demo", "--which", "parity"]);
    assert_eq!(code, 0);
    assert_eq!(v["I(Y;Z)"], 0.0);
    assert_eq!(v["I(Y;Z|X)"], 1.0);
    let (code, v) = json(&["demo", "--which", "kr:0.01"]);
    assert_eq!(code, 0);
    assert!(v["I(C;D)"].as_f64().unwrap() > 0.0);
    let (code, _) = json(&["demo", "--which", "matus:5"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["demo", "--which", "triangle"]);
    assert_eq!(code, 0);
    let (code, v) = json(&["demo", "--which", "bogus"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
}

#[test]
fn coefficient_demo_shows_tightness() {
    let (code, v) = json(&["demo", "--which", "coefficients"]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    let lowered = v["lowered"].as_array().unwrap();
    assert_eq!(lowered[0]["violation"], "1/1000");
    assert_eq!(lowered[1]["violation"], "1/500");
}

#[test]
fn human_output_renders_fractions() {
    let out = implic(&["demo", "--which", "coefficients"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("violated by 1/1000"));
    assert!(text.contains("exact arithmetic"));
}
