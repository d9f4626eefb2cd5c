use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const PARAMS: [&str; 8] = ["--a", "1", "--b", "1", "--c", "1", "--d", "1"];
const ONES: [&str; 12] = ["--x-2", "1", "--x-1", "1", "--x0", "1", "--y-2", "1", "--y-1", "1", "--y0", "1"];
const WITNESS: [&str; 11] = ["--x-2", "1", "--x-1", "1", "--x0", "1", "--y-2", "1", "--y-1", "1", "--y0=-3"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetrasolve")).args(args).output().expect("binary runs")
}

fn args<'a>(parts: &[&[&'a str]]) -> Vec<&'a str> {
    parts.concat()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/golden").join(format!("{name}.json"));
    serde_json::from_str(&std::fs::read_to_string(&path).expect("golden file exists")).unwrap()
}

/// Equal up to a relative tolerance on floating-point numbers.
fn same(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) if x.is_f64() || y.is_f64() => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300) || (x - y).abs() <= 1e-15
        }
        (Value::Array(x), Value::Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| same(p, q)),
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| same(v, w)))
        }
        _ => a == b,
    }
}

fn check_golden(name: &str, cmd: &[&str], code: i32) {
    let out = run(cmd);
    assert_eq!(out.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    let got = json(&out);
    assert!(same(&got, &golden(name)), "{name} differs from golden:\n{got:#}");
}

#[test]
fn goldens() {
    check_golden("roots", &args(&[&["roots"], &PARAMS]), 0);
    check_golden("seq", &args(&[&["seq"], &PARAMS, &["--n", "7"]]), 0);
    check_golden("binet", &args(&[&["binet"], &PARAMS, &["--n", "10"]]), 0);
    check_golden("solve", &args(&[&["solve"], &PARAMS, &ONES, &["--horizon", "6"]]), 0);
    check_golden("forbidden", &args(&[&["forbidden"], &PARAMS, &WITNESS, &["--n", "6"]]), 2);
    check_golden("verify", &["verify", "--trials", "20", "--seed", "1", "--horizon", "10"], 0);
    check_golden("tetranacci", &args(&[&["tetranacci"], &ONES, &["--horizon", "6"]]), 0);
}

#[test]
fn documented_examples() {
    let out = run(&args(&[&["solve"], &PARAMS, &ONES, &["--horizon", "6"]]));
    let v = json(&out);
    let one = v["values"].as_array().unwrap().iter().find(|e| e["n"] == 1).unwrap();
    assert_eq!(one["x"], "4");
    assert_eq!(one["y"], "4");

    let v = json(&run(&args(&[&["roots"], &PARAMS])));
    assert_eq!(v["case"], "C7");
    assert!((v["labels"]["alpha"]["re"].as_f64().unwrap() - 1.927561975).abs() < 1e-8);

    let v = json(&run(&args(&[&["seq"], &PARAMS, &["--n", "7"]])));
    assert_eq!(v, serde_json::json!(["0", "0", "1", "1", "2", "4", "8", "15"]));
}

#[test]
fn forbidden_hit_exits_two_and_still_reports() {
    let out = run(&args(&[&["solve"], &PARAMS, &WITNESS, &["--horizon", "10"]]));
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"]["status"], "cutoff_at_step");
    assert_eq!(v["status"]["index"], 2);
    assert_eq!(v["status"]["equation"], "Y");
    assert_eq!(v["first_forbidden"]["which"], "A");

    // a horizon that stops before the cutoff is a clean run
    let out = run(&args(&[&["solve"], &PARAMS, &WITNESS, &["--horizon", "1"]]));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one_with_diagnostic() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["roots", "--a", "1"],
        vec!["roots", "--a", "1", "--b", "1", "--c", "1", "--d", "0"],
        vec!["roots", "--a", "x", "--b", "1", "--c", "1", "--d", "1"],
        args(&[&["solve"], &PARAMS, &["--x-2", "0", "--x-1", "1", "--x0", "1", "--y-2", "1", "--y-1", "1", "--y0", "1"]]),
        vec!["frobnicate"],
    ];
    for c in cases {
        let out = run(&c);
        assert_eq!(out.status.code(), Some(1), "{c:?}");
        assert!(out.stdout.is_empty(), "{c:?}");
        assert!(!out.stderr.is_empty(), "{c:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("tetranacci"));
}

#[test]
fn csv_has_fraction_and_decimal_columns() {
    let out = run(&args(&[&["solve"], &PARAMS, &ONES, &["--horizon", "2", "--format", "csv"]]));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,x,x_decimal,y,y_decimal");
    assert_eq!(lines[5], "2,7/4,1.7500000000000000e0,7/4,1.7500000000000000e0");
}

#[test]
fn fractions_and_decimals_are_accepted() {
    let out = run(&["seq", "--a=-1/2", "--b", "0.25", "--c", "3", "--d=-2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!(["0", "0", "1", "-1/2", "1/2"]));
}

#[test]
fn output_is_deterministic() {
    let cmd = ["verify", "--trials", "15", "--seed", "9", "--horizon", "12", "--coeff-range", "3"];
    assert_eq!(run(&cmd).stdout, run(&cmd).stdout);
}
