use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselpoly")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn poly_p3_at_zero() {
    let v = json(&["poly", "--basis", "p", "--n", "3", "--alpha", "0"]);
    assert_eq!(strings(&v["coefficients"]), ["0", "-1", "15", "-15"]);
}

#[test]
fn monic_p1_symbolic() {
    let v = json(&["poly", "--basis", "P", "--n", "1", "--alpha", "symbolic"]);
    assert_eq!(strings(&v["coefficients"]), ["(-a^2)/(1 + 2*a)", "1"]);
}

#[test]
fn euler_poly_diagonal() {
    // E_2^2(x) = x^2 - 2x + 1/2, so E_2^2(1) = -1/2.
    let v = json(&["poly", "--basis", "euler", "--n", "2", "--alpha", "1"]);
    assert_eq!(strings(&v["coefficients"]), ["1/2", "-2", "1"]);
}

#[test]
fn orthogonal_basis() {
    let v = json(&["poly", "--basis", "Q", "--n", "1", "--alpha", "1"]);
    assert_eq!(strings(&v["coefficients"]), ["-1/3", "1"]);
}

#[test]
fn moments_table() {
    let v = json(&["moments", "--n", "2", "--alpha", "1"]);
    assert_eq!(strings(&v["moments"]), ["1", "1/3", "4/15"]);
    let out = run(&["moments", "--n", "2", "--alpha", "1", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "k,moment\n0,1\n1,1/3\n2,4/15\n");
}

#[test]
fn recurrence_tables() {
    let v = json(&["recur", "--n", "1", "--alpha", "symbolic"]);
    assert_eq!(strings(&v["betas"])[0], "(a^2)/(1 + 2*a)");
    assert_eq!(strings(&v["gammas"]), ["(a^2 + 4*a^3 + 2*a^4)/(3 + 14*a + 20*a^2 + 8*a^3)"]);

    let v = json(&["recur", "--n", "5", "--alpha", "1"]);
    let (betas, gammas) = (strings(&v["betas"]), strings(&v["gammas"]));
    assert_eq!((betas.len(), gammas.len()), (6, 5));
    assert!(betas.iter().chain(&gammas).all(|s| !s.starts_with('-') && s != "0"));
}

#[test]
fn caps_and_usage_errors_exit_2() {
    assert_eq!(run(&["recur", "--n", "9", "--alpha", "symbolic"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "--n", "21", "--alpha", "1"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "--n", "2", "--alpha", "one"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "--n", "2", "--basis", "R"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "fast"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "exact", "--abs-tol", "0"]).status.code(), Some(2));
}

#[test]
fn kl_table_csv() {
    let out = run(&["kl", "--tau", "0", "--x", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tau,x,k_itau"));
    let value: f64 = lines.next().unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert!((value - 0.421_024_438_240_708_3).abs() < 1e-12);
}

#[test]
fn euler_probe_report() {
    let v = json(&["euler", "--n", "1", "--alpha", "1"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!((rows[0]["fitted_constant"].as_f64().unwrap() - 2.0).abs() < 1e-10);
    assert!((rows[1]["ratio_fitted_to_stated"].as_f64().unwrap() + 2.0).abs() < 1e-10);
}

#[test]
fn discrepancy_suite_is_byte_stable_apart_from_wall_time() {
    let strip = |args: &[&str]| {
        let mut v = json(args);
        v.as_object_mut().unwrap().remove("wall_time");
        serde_json::to_string(&v).unwrap()
    };
    let args = ["verify", "--suite", "discrepancies"];
    let first = strip(&args);
    assert_eq!(first, strip(&args));
    let v: Value = serde_json::from_str(&first).unwrap();
    let statuses: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert!(statuses.contains(&"report-only"));
    assert!(!statuses.contains(&"fail"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("besselpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("stirling.csv");
    let out = run(&["stirling", "--n", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,0,1,2,3\n0,1,,,\n1,0,1,,\n2,0,1,1,\n3,0,1,3,1\n");
    std::fs::remove_dir_all(dir).unwrap();
}
