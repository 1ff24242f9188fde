use std::process::{Command, Output};

fn wsuper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsuper")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bracket_examples() {
    let o = wsuper(&["bracket", "--s", "0", "L[2]", "L[-1]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3*L[1]");

    let o = wsuper(&["bracket", "--s", "1/2", "--lambda", "l", "L[1]", "G[1/2]"]);
    assert_eq!(stdout(&o).trim(), "(2*l)*H[3/2]");

    assert_eq!(stdout(&wsuper(&["bracket", "H[0]", "H[1]"])).trim(), "0");
    assert_eq!(stdout(&wsuper(&["bracket", "--lambda", "-2", "L[1]", "G[0]"])).trim(), "1/2*G[1] + -4*H[1]");
}

#[test]
fn parse_errors_exit_two_with_position() {
    let o = wsuper(&["bracket", "L[2", "L[1]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));
    assert_eq!(wsuper(&["bracket", "--s", "0", "G[1/2]", "L[0]"]).status.code(), Some(2));
    assert_eq!(wsuper(&["classify", "--window", "33"]).status.code(), Some(2));
    assert_eq!(wsuper(&["classify", "--window", "5", "--interior", "4"]).status.code(), Some(2));
    assert_eq!(wsuper(&["bracket", "--lambda", "x", "L[0]", "L[1]"]).status.code(), Some(2));
}

#[test]
fn check_axioms_passes() {
    let o = wsuper(&["check-axioms", "--s", "1/2", "--window", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("super Jacobi: 0 violations"));
}

#[test]
fn classify_matches_expectation() {
    let o = wsuper(&["classify", "--s", "0", "--lambda", "5", "--degrees", "-1..1", "--window", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("even     0: nullspace 3, inner 2, outer 1 [d2]"));

    let o = wsuper(&["classify", "--s", "1/2", "--lambda", "0", "--degrees", "0..0", "--parity", "even", "--window", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cells"][0]["dim_outer"], 2);
    assert_eq!(v["cells"][0]["outer_labels"], serde_json::json!(["d3", "d4"]));
}

#[test]
fn json_output_is_stable() {
    let args = ["classify", "--s", "1/2", "--degrees", "-1..1", "--window", "5", "--interior", "3", "--format", "json"];
    assert_eq!(wsuper(&args).stdout, wsuper(&args).stdout);
    let args = ["aut", "verify", "--lambda", "0", "--samples", "3", "--seed", "11", "--window", "3", "--format", "json"];
    assert_eq!(wsuper(&args).stdout, wsuper(&args).stdout);
}

#[test]
fn aut_verify_examples() {
    let ok = wsuper(&["aut", "verify", "--lambda", "0", "--epsilon", "-1", "--alpha", "2", "--mu", "1", "--x", "1", "--beta", "3", "--gamma", "5"]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = wsuper(&["aut", "verify", "--lambda", "1", "--epsilon", "-1", "--alpha", "2", "--mu", "1", "--x", "1", "--format", "json"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn aut_apply_inner_exp() {
    let o = wsuper(&["aut", "apply", "--inner-exp", "1,0", "L[2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "L[2] + -2*I[2]");
    let o = wsuper(&["aut", "apply", "--lambda", "0", "--epsilon", "-1", "--alpha", "2", "L[1]"]);
    assert_eq!(stdout(&o).trim(), "-2*L[-1]");
    // x^2 != mu^3
    assert_eq!(wsuper(&["aut", "apply", "--x", "2", "L[1]"]).status.code(), Some(2));
}

#[test]
fn aut_conjugate_and_constraints() {
    let o = wsuper(&["aut", "conjugate", "--lambda", "0", "--epsilon", "-1", "--alpha", "2", "--mu", "4", "--x", "8", "--inner-exp", "3,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "id + (48) ad I[-2]");

    let o = wsuper(&["aut", "constraints", "--lambda", "1", "--mu", "4", "--x", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL l (1/mu - 1) = 0"));
    assert_eq!(wsuper(&["aut", "constraints", "--lambda", "l", "--alpha", "l"]).status.code(), Some(0));
}
