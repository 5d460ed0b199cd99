use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn superali(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superali")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

#[test]
fn span_sl3_json() {
    let o = superali(&["span", "--algebra", "sl(3)", "--kmax", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["command"], "span");
    assert_eq!(v["spec"], "sl(3)");
    assert_eq!(v["nonvanishing"], serde_json::json!([2, 4]));
    assert_eq!(v["minimal_identity"], 6);
    assert_eq!(v["parameters"]["kMax"], 8);
    assert_eq!(v["results"].as_array().unwrap().len(), 7);
}

#[test]
fn span_output_is_deterministic_up_to_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&v).unwrap()
    };
    let args = ["span", "--algebra", "sp(4)", "--kmax", "7"];
    let a = strip(json(&superali(&args)));
    let b = strip(json(&superali(&args)));
    assert_eq!(a, b);
}

#[test]
fn span_field_order_is_fixed() {
    let out = stdout(&superali(&["span", "--algebra", "sl(2)", "--kmax", "3"]));
    let keys = ["\"command\"", "\"spec\"", "\"parameters\"", "\"results\"", "\"nonvanishing\"", "\"timing\"", "\"version\""];
    let pos: Vec<usize> = keys.iter().map(|k| out.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn matrix_identity_gl2() {
    let o = superali(&["matrix-identity", "--algebra", "gl(2)", "--r", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "zero");
    let o = superali(&["matrix-identity", "--algebra", "gl(2)", "--r", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "nonzero");
}

#[test]
fn vect2_critical_scan() {
    let o = superali(&["vect-critical", "--algebra", "vect(2)", "--degree", "2", "--nmin", "3", "--nmax", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let res = v["results"].as_array().unwrap();
    let class = |n: u64| res.iter().find(|r| r["item"] == n).unwrap()["classification"].clone();
    assert_eq!(class(6), "commutator");
    assert_eq!(class(7), "zero");
    assert_eq!(class(5), "higher-order");
}

#[test]
fn vect3_needs_long_flag() {
    let o = superali(&["vect-critical", "--algebra", "vect(3)", "--degree", "1", "--nmin", "1", "--nmax", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("long-running"));
}

#[test]
fn unknown_spec_is_a_usage_error() {
    let o = superali(&["span", "--algebra", "foo(3)"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("gl(m|n)") && err.contains("osp(m|2n)"));
    let o = superali(&["vect-critical", "--algebra", "h(3)", "--nmin", "1", "--nmax", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(superali(&["span"]).status.code(), Some(2));
}

#[test]
fn subcritical_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# X1 X2 X3 Y\n1*d/dx\nx*d/dx\nx^2*d/dx  # projective\n-1/2*x^3*d/dx + 2*d/dx").unwrap();
    let o = superali(&["subcritical", "--fields", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["matches"], true);
    assert_eq!(v["wronskian"], "2");
    assert_eq!(v["multiplier"], "-4");
}

#[test]
fn subcritical_rejects_malformed_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "d/dx\nx*d/dy\nx^2*d/dx\nd/dx").unwrap();
    let o = superali(&["subcritical", "--fields", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suite() {
    let o = superali(&["verify", "--suite", "sign-cocycle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS [ 7] sign-cocycle"));
    assert_eq!(superali(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn bench_reports_both_methods() {
    let o = superali(&["bench", "--algebra", "gl(2)", "--r", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let arr = v.as_array().unwrap();
    assert_eq!(arr[0]["method"], "naive");
    assert_eq!(arr[1]["method"], "generic");
    assert_eq!(arr[0]["zero"], true);
    assert_eq!(arr[1]["zero"], true);
    assert_eq!(arr[0]["tuples"], arr[1]["tuples"]);
}

#[test]
fn thread_cap_is_respected() {
    let o = Command::new(env!("CARGO_BIN_EXE_superali"))
        .args(["matrix-identity", "--algebra", "gl(2)", "--r", "4"])
        .env("SUPERALI_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_superali"))
        .args(["matrix-identity", "--algebra", "gl(2)", "--r", "4"])
        .env("SUPERALI_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
