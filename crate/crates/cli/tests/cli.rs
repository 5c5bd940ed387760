use std::process::Command;

use serde_json::Value;
use vallab::MonomialIdeal;
use vallab_cli::{parse_ideal, run_command, CliError, Outcome};

fn run(args: &[&str]) -> Outcome {
    run_with_stdin(args, "")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["vallab"];
    argv.extend_from_slice(args);
    run_command(argv, &mut stdin.as_bytes())
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.json()
}

fn assert_exact(v: &Value) {
    match v {
        Value::Number(n) => assert!(!n.is_f64(), "float in output: {n}"),
        Value::Array(a) => a.iter().for_each(assert_exact),
        Value::Object(o) => o.values().for_each(assert_exact),
        _ => {}
    }
}

#[test]
fn lct_example() {
    let out = run(&["lct", "--q", "x", "--a", "x^2, y^3"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), r#"{"value":"4/3","rays":[[3,2]]}"#);
}

#[test]
fn lct_values() {
    assert_eq!(ok(&["lct", "--a", "x^2, y^3"])["value"], "5/6");
    assert_eq!(ok(&["lct", "--q", "x*y", "--a", "x*y"])["value"], "2");
    assert_eq!(ok(&["lct", "--a", "1", "--dim", "2"])["value"], "infinity");
    assert_eq!(ok(&["lct", "--a", "1", "--dim", "2"])["rays"], serde_json::json!([]));
    let v = ok(&["lct", "--q", "x", "--qprime", "y", "--lambda", "-1/2", "--a", "x^2, y^3"]);
    assert_eq!(v["value"], "7/6");
    let v = ok(&["lct", "--q", "x", "--seq", "val:3/8,1/4"]);
    assert_eq!(v["value"], "1");
    assert_eq!(v["rays"], serde_json::json!([[3, 2]]));
    assert_eq!(ok(&["lct", "--seq", "pow:x^2, y^3"])["value"], "5/6");
    assert_eq!(ok(&["lct", "--q", "x", "--seq", "enl:val:3/8,1/4;y;3"])["value"], "13/12");
}

#[test]
fn tree_examples() {
    let out = run(&["tree", "min-n", "--seq", "3/2:1,2:2"]);
    assert_eq!(out.stdout.trim(), r#"{"N":2,"max_gap":"1"}"#);
    assert_eq!(ok(&["tree", "min-n", "--seq", "3/2:1"])["N"], 2);
    assert_eq!(ok(&["tree", "a-disc", "--seq", "3/2:1,2:2", "--t", "2"])["value"], "7/2");
    assert_eq!(ok(&["tree", "zv1", "--seq", "3/2:1,2:2"])["member"], false);
    assert_eq!(ok(&["tree", "zv1", "--seq", "5/2:1"])["member"], true);
    assert_eq!(ok(&["tree", "sigma", "--seq", "3/2:1,2:2"])["decreasing"], true);
    assert_eq!(ok(&["tree", "relative", "--seq", "3/2:1,2:2", "--w", "3/2"])["value"], "3/4");
}

#[test]
fn tian_tsv_example() {
    let out = run(&["tian", "--q", "x", "--qprime", "y", "--seq", "val:3/8,1/4", "--format", "tsv"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "t\tslope\tvalue");
    let rows: Vec<Vec<&str>> = lines[1..].iter().map(|l| l.split('\t').collect()).collect();
    assert!(rows.iter().all(|r| r[1] == "1/4"));
    assert!(rows.iter().any(|r| r[0] == "0" && r[2] == "1"));
}

#[test]
fn tian_json() {
    let v = ok(&["tian", "--q", "x", "--qprime", "y", "--seq", "val:3/8,1/4"]);
    assert_eq!(v["pieces"].as_array().unwrap().len(), 1);
    assert_eq!(v["slope_at_infinity"], "1/4");
    assert_eq!(v["at_zero"]["left_slope"], v["at_zero"]["right_slope"]);
    assert_eq!(v["at_zero"]["value"], "1");
    let v = ok(&["tian", "--qprime", "x^3, y", "--a", "x^2, y^3"]);
    assert_eq!(v["domain_min"], "-4/3");
    assert_eq!(v["breakpoints"], serde_json::json!(["-1"]));
    assert_eq!(v["at_zero"]["value"], "5/6");
    assert_exact(&v);
}

#[test]
fn zhou_subcommands() {
    let v = ok(&["zhou", "rescale", "--alpha", "1/4,1/2", "--q", "x"]);
    assert_eq!(v["scale"], "1");
    assert_eq!(v["log_discrepancy"], "3/4");
    let v = ok(&["zhou", "rescale", "--alpha", "3,2", "--q", "x"]);
    assert_eq!(v["scale"], "8");
    assert_eq!(v["normalized"], serde_json::json!(["3/8", "1/4"]));
    assert_eq!(ok(&["zhou", "test", "--alpha", "3/8,1/4", "--q", "x"])["pass"], true);
    assert_eq!(ok(&["zhou", "test", "--alpha", "1,1", "--q", "x"])["pass"], false);
    assert_eq!(ok(&["zhou", "membership", "--alpha", "1,1", "--q", "x^3*y^3"])["member"], false);
    assert_eq!(ok(&["zhou", "membership", "--alpha", "1/2,1/2"])["member"], true);
}

#[test]
fn other_subcommands() {
    assert_eq!(ok(&["compare", "--a", "x^2, y^2", "--aprime", "x*y"])["order"], "LESS_SINGULAR");
    assert_eq!(ok(&["compare", "--a", "x^2, y^3", "--aprime", "x^3, y^2"])["order"], "INCOMPARABLE");
    let v = ok(&["enlarge-check", "--seq", "val:3/8,1/4", "--q", "x", "--qprime", "y", "--beta", "4"]);
    assert_eq!(v["lct"], "1");
    assert_eq!(v["threshold"], "4");
    assert_eq!(v["value_on_enlarged"], "1");
    assert_eq!(ok(&["oracle", "jn", "--q", "x", "--a", "x^2, y^3"])["value"], "4/3");
    assert_eq!(ok(&["oracle", "mult", "--a", "x^2, y^3", "--c", "1"])["ideal"], "x, y");
    assert_eq!(ok(&["oracle", "growth", "--a", "x^2, y^3", "--rays", "3,2;1,1"])["passed"], true);
    let v = ok(&["sandwich", "--alpha", "1/2,1/3", "--q", "x, y", "--k", "3"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["upper_is_tight"], true);
}

#[test]
fn outputs_are_exact() {
    for args in [
        vec!["lct", "--q", "x", "--a", "x^2, y^3"],
        vec!["tian", "--q", "x", "--qprime", "y", "--seq", "val:3/8,1/4"],
        vec!["tree", "sigma", "--seq", "3/2:1,2:2"],
        vec!["oracle", "growth", "--a", "x^2, y^3"],
        vec!["sandwich", "--alpha", "1/2,1/3", "--q", "x", "--k", "2"],
    ] {
        assert_exact(&ok(&args));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["lct", "--q", "x^-1", "--a", "x"]).code, 2);
    assert_eq!(run(&["lct", "--q", "x", "--a", "x1^2"]).code, 2);
    assert_eq!(run(&["lct", "--q", "x"]).code, 2);
    assert_eq!(run(&["lct", "--a", "x", "--lambda", "1/0"]).code, 2);
    assert_eq!(run(&["bogus"]).code, 2);
    assert_eq!(run(&["tree", "min-n", "--seq", "3/2;1"]).code, 2);
    // numerator negative at (1,0): lambda below the admissible bound
    let out = run(&["lct", "--q", "x", "--qprime", "x", "--lambda", "-3", "--a", "x^2, y^3"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("not positive"), "{}", out.stderr);
    assert_eq!(run(&["lct", "--seq", "val:1/2", "--a", "x"]).code, 2);
    assert_eq!(run(&["lct", "--q", "y", "--seq", "val:1/2"]).code, 3);
    assert_eq!(run(&["tree", "min-n", "--seq", "3/2:2"]).code, 3);
    assert_eq!(run(&["tree", "a-disc", "--seq", "3/2:1", "--t", "5"]).code, 3);
    assert_eq!(run(&["enlarge-check", "--seq", "pow:x", "--qprime", "x", "--beta", "1"]).code, 3);
    assert_eq!(run(&["zhou", "rescale", "--alpha", "0,0", "--q", "x*y"]).code, 3);
    assert_eq!(run(&["lct", "--a", "x", "--dim", "1", "--q", "y"]).code, 3);
    assert_eq!(CliError::from(vallab::Error::CrossCheck("x".into())).exit_code(), 4);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn parse_errors_report_offsets() {
    let out = run(&["lct", "--q", "x", "--seq", "val:1/2,abc"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("byte 8"), "{}", out.stderr);
}

#[test]
fn stdin_ideal() {
    let out = run_with_stdin(&["lct", "--q", "x", "--a", "-"], "x^2, y^3\n");
    assert_eq!(out.code, 0);
    assert_eq!(out.json()["value"], "4/3");
}

#[test]
fn dim_cap_env() {
    let bin = env!("CARGO_BIN_EXE_vallab");
    let out = Command::new(bin)
        .args(["lct", "--a", "x1, x2, x3, x4, x5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin)
        .env("VALLAB_DIM_CAP", "2")
        .args(["lct", "--a", "x, y, z"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("VALLAB_DIM_CAP"));
    let out = Command::new(bin).args(["lct", "--q", "x", "--a", "x^2, y^3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"value":"4/3","rays":[[3,2]]}"#);
}

#[test]
fn round_trip() {
    let fixtures: Vec<(usize, Vec<Vec<u32>>)> = vec![
        (1, vec![vec![3]]),
        (2, vec![vec![2, 0], vec![0, 3]]),
        (2, vec![vec![1, 1]]),
        (2, vec![vec![0, 0]]),
        (3, vec![vec![1, 0, 2], vec![0, 4, 0], vec![2, 1, 1]]),
        (4, vec![vec![1, 0, 0, 1], vec![0, 2, 3, 0]]),
        (5, vec![vec![0, 0, 0, 0, 7]]),
    ];
    for (dim, gens) in fixtures {
        let a = MonomialIdeal::new(dim, gens).unwrap();
        let text = a.to_string();
        assert_eq!(parse_ideal(&text, Some(dim)).unwrap(), a, "{text}");
    }
}
