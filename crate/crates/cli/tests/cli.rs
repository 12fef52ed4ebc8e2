use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prolongkit"))
        .args(args)
        .env_remove("PROLONGKIT_SEED")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn matrix(v: &Value) -> Vec<Vec<String>> {
    serde_json::from_value(v["result"]["matrix"].clone()).unwrap()
}

fn strings(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect()
}

#[test]
fn prolong_xt_first_order() {
    let out = run(&["prolong", &data("xt.json"), "-i", "1", "--kind", "binomial"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["outcome"], "result");
    assert_eq!(matrix(&r), strings(&[&["t/x", "0"], &["1/x", "t/x"]]));
}

#[test]
fn prolong_order_zero_echoes_input() {
    for kind in ["binomial", "lemma", "iterated"] {
        let out = run(&["prolong", &data("nilpotent.json"), "-i", "0", "--kind", kind]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(matrix(&report(&out)), strings(&[&["0", "1"], &["0", "0"]]));
    }
}

#[test]
fn lemma_and_binomial_differ_by_two_at_block_one_zero() {
    let f = data("xt.json");
    let bin = matrix(&report(&run(&["prolong", &f, "-i", "2", "--kind", "binomial"])));
    let lem = matrix(&report(&run(&["prolong", &f, "-i", "2", "--kind", "lemma"])));
    assert_eq!(bin[1][0], "1/x");
    assert_eq!(lem[1][0], "2/x");
    assert_eq!(bin[0], lem[0]);
}

#[test]
fn iterated_matches_binomial_at_first_order() {
    let f = data("xt.json");
    let bin = matrix(&report(&run(&["prolong", &f, "-i", "1", "--kind", "binomial"])));
    let it = matrix(&report(&run(&["prolong", &f, "-i", "1", "--kind", "iterated"])));
    assert_eq!(bin, it);
}

#[test]
fn verify_xt_passes_up_to_three() {
    for i in 0..=3 {
        let out = run(&["verify", "--example", "xt", "-i", &i.to_string()]);
        assert_eq!(out.status.code(), Some(0), "i = {i}");
        assert_eq!(report(&out)["outcome"], "pass");
    }
}

#[test]
fn verify_stripped_xt_fails_in_block_row_two() {
    let out = run(&["verify", "--example", "xt", "-i", "2", "--strip-binomials"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["outcome"], "fail");
    assert_eq!(r["witnesses"][0]["block_row"], 2);
}

#[test]
fn verify_solution_file() {
    let out = run(&[
        "verify",
        &data("xt.json"),
        "--solution",
        &data("xt_solution.json"),
        "-i",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "verify",
        &data("nilpotent.json"),
        "--solution",
        &data("nilpotent_solution.json"),
        "-i",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_unrepresentable_solution_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("sol.json");
    std::fs::write(&sol, r#"{"matrix": [["exp(x)"]]}"#).unwrap();
    let out = run(&["verify", &data("xt.json"), "--solution", sol.to_str().unwrap(), "-i", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["outcome"], "error");
    assert!(r["error"].as_str().unwrap().contains("exp"));
}

#[test]
fn wrong_solution_fails() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("sol.json");
    std::fs::write(&sol, r#"{"matrix": [["x"]]}"#).unwrap();
    let out = run(&["verify", &data("xt.json"), "--solution", sol.to_str().unwrap(), "-i", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn checks_pass() {
    let cases: &[&[&str]] = &[
        &["check", "conjugation", "--n", "2", "--i", "3", "--seed", "7"],
        &["check", "embedding", "--count", "5"],
        &["check", "exactness", "--count", "5"],
        &["check", "product-rule", "--count", "5"],
        &["check", "dual-swap", "--count", "5"],
        &["check", "hopf", "--group", "gm", "--order", "3"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(report(&out)["outcome"], "pass");
    }
}

#[test]
fn check_on_file() {
    let out = run(&["check", "exactness", "--file", &data("nilpotent.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["cases"], 1);
}

#[test]
fn hopf_ga_carries_printed_antipode_note() {
    let out = run(&["check", "hopf", "--group", "ga", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["outcome"], "pass");
    assert_eq!(r["notes"].as_array().unwrap().len(), 1);
    assert_eq!(r["result"][0]["printed_antipode"]["first_conflict_p"], 1);
}

#[test]
fn category_operations() {
    let xt = data("xt.json");
    let nil = data("nilpotent.json");
    assert_eq!(matrix(&report(&run(&["tensor", &xt, &xt]))), strings(&[&["2*t/x"]]));
    assert_eq!(matrix(&report(&run(&["dual", &nil]))), strings(&[&["0", "0"], &["-1", "0"]]));
    assert_eq!(
        matrix(&report(&run(&["dsum", &xt, &nil]))),
        strings(&[&["t/x", "0", "0"], &["0", "0", "1"], &["0", "0", "0"]])
    );
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["check", "bogus"],
        &["check", "hopf", "--order", "0"],
        &["prolong"],
        &["verify", "-i", "1"],
        &["prolong", "/definitely/not/here.json", "-i", "1"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn malformed_module_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bodies = [
        "not json",
        r#"{"n": 2, "matrix": [["1"]]}"#,
        r#"{"n": 1, "matrix": [["1/0"]]}"#,
        r#"{"n": 1, "matrix": [["x^^2"]]}"#,
        r#"{"n": 1, "matrix": [["x"]], "extra": 1}"#,
    ];
    for (k, body) in bodies.iter().enumerate() {
        let f = dir.path().join(format!("m{k}.json"));
        std::fs::write(&f, body).unwrap();
        let out = run(&["prolong", f.to_str().unwrap(), "-i", "1"]);
        assert_eq!(out.status.code(), Some(2), "{body}");
        assert_eq!(report(&out)["outcome"], "error");
    }
}

#[test]
fn reports_are_byte_stable() {
    let args = ["check", "conjugation", "--n", "2", "--i", "2", "--seed", "11", "--count", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let x = run(&["verify", "--example", "xt", "-i", "2", "--strip-binomials"]);
    let y = run(&["verify", "--example", "xt", "-i", "2", "--strip-binomials"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn seed_env_var_is_used() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_prolongkit"))
        .args(["check", "exactness", "--count", "2"])
        .env("PROLONGKIT_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(report(&with_env)["inputs"]["seed"], 123);
    let flag = run(&["check", "exactness", "--count", "2", "--seed", "123"]);
    assert_eq!(with_env.stdout, flag.stdout);
}

#[test]
fn timings_only_when_requested() {
    let plain = report(&run(&["dual", &data("xt.json")]));
    assert!(plain.get("timing_ms").is_none());
    let timed = report(&run(&["dual", &data("xt.json"), "--timings"]));
    assert!(timed["timing_ms"].is_number());
}

#[test]
fn summary_goes_to_stderr() {
    let out = run(&["dual", &data("xt.json")]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("dual:"));
}
