use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hyp_membership() {
    let f = "TROP: min(1 + 2*X1, 0 + X1, 2)";
    let on = run(&["hyp", "--poly", f, "--gamma", "2"]);
    assert_eq!(on.status.code(), Some(0));
    assert_eq!(stdout(&on).trim(), "true");
    let off = run(&["hyp", "--poly", f, "--gamma", "1"]);
    assert_eq!(off.status.code(), Some(0));
    assert_eq!(stdout(&off).trim(), "false");
}

#[test]
fn hyp_accepts_laurent_input() {
    let o = run(&["hyp", "--poly", "x1 + x2 + 1", "--gamma", "0,3"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = run(&["hyp", "--poly", "x1 + x2 + 1", "--gamma", "1,3"]);
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn witness_json_report() {
    let o = run(&["witness", "--poly", "x1 + x2 + 1", "--gamma", "0,0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valuation"], serde_json::json!(["0", "0"]));
    assert_eq!(v["point"][0]["text"], "1");
    assert_eq!(v["point"][1]["text"], "-2");
    assert_eq!(v["residual_valuation"], "Infinity");
    assert_eq!(v["split_coordinate"], 1);
}

#[test]
fn witness_rank2() {
    let o = run(&["--rank", "2", "witness", "--poly", "x1 - x2", "--gamma", "(1,0),(1,0)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["point"][0]["text"], "T^(1)");
    assert_eq!(v["point"][1]["text"], "T^(1)");
}

#[test]
fn witness_off_hypersurface_is_input_error() {
    let o = run(&["witness", "--poly", "x1 + x2 + 1", "--gamma", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn axioms_seed_7() {
    let o = run(&["axioms", "--seed", "7", "--cases", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("seed: 7\n"), "{out}");
    assert!(out.contains("valuation axioms: 1000 cases, 0 failures"));
    assert!(out.contains("newton polygon oracle: 1000 cases, 0 failures"));
}

#[test]
fn axioms_json_is_byte_identical() {
    let args = ["--rank", "2", "axioms", "--seed", "3", "--cases", "50", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["passed"], true);
}

#[test]
fn check_product_is_deterministic_and_passes() {
    let args = ["check-product", "--poly", "x1 + t", "--poly", "x1 + x2 + 1", "--seed", "5", "--cases", "30", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["random_samples"], 30);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn check_product_needs_two_polys() {
    let o = run(&["check-product", "--poly", "x1 + 1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn trop_and_roots() {
    let f = "x1^2 - (t + t^2)*x1 + t^3";
    let o = run(&["trop", "--poly", f]);
    assert_eq!(stdout(&o).trim(), "TROP: min(3, 1 + X1, 0 + 2*X1)");
    let o = run(&["roots1d", "--poly", f, "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let vals: Vec<&str> = v["roots"].as_array().unwrap().iter().map(|r| r["valuation"].as_str().unwrap()).collect();
    assert_eq!(vals, ["1", "2"]);
    assert!(v["roots"].as_array().unwrap().iter().all(|r| r["certified"] == true));
}

#[test]
fn eval_series_and_tropical() {
    let o = run(&["eval", "--poly", "x1*x2 + 1", "--point", "t; 1 + t"]);
    assert_eq!(stdout(&o).lines().next(), Some("1 + T^(1) + T^(2)"));
    let o = run(&["eval", "--poly", "TROP: min(1 + 2*X1, 0 + X1, 2)", "--gamma", "1/2"]);
    assert_eq!(stdout(&o).trim(), "1/2");
}

#[test]
fn cells2d_json() {
    let o = run(&["cells2d", "--poly", "x1 + x2 + 1", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 3);
}

#[test]
fn input_errors_exit_1() {
    for args in [
        vec!["hyp", "--poly", "x1 +", "--gamma", "0"],
        vec!["hyp", "--poly", "x1 + s", "--gamma", "0"],
        vec!["hyp", "--poly", "x1 + 1"],
        vec!["--rank", "2", "hyp", "--poly", "x1 + 1", "--gamma", "1"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
}
