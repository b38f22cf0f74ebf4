use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_linesing")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn report_envelope() {
    let (code, v) = json(&["invariants", "x^2+y^2*z"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "linesing.report/1");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["ok"], true);
    assert_eq!(v["command"], serde_json::json!(["--format", "json", "invariants", "x^2+y^2*z"]));
    for key in ["version", "results", "caveats", "timing_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn invariants_of_table_rows() {
    let (_, v) = json(&["invariants", "x^3+y^3*z"]);
    let r = &v["results"]["report"];
    assert_eq!((r["j"].as_u64(), r["delta"].as_u64(), r["deg_transversal"].as_u64()), (Some(2), Some(4), Some(2)));
    assert_eq!(r["mu_series"]["4"], 18);
    assert_eq!(r["transversal"]["h"], "z^2");
    assert_eq!(r["transversal"]["reduced"], false);

    let (_, v) = json(&["invariants", "x^2+y^2*z"]);
    let r = &v["results"]["report"];
    assert_eq!((r["j"].as_u64(), r["delta"].as_u64(), r["deg_transversal"].as_u64()), (Some(1), Some(1), Some(1)));

    let (_, v) = json(&["invariants", "x^2+y^2"]);
    let r = &v["results"]["report"];
    assert_eq!(r["delta"], 0);
    assert_eq!(r["transversal"]["empty"], true);
}

#[test]
fn verify_table_preset() {
    let (code, v) = json(&["verify", "--t0", "1/2", "--t0", "1/3", "--g", "x^2*y+y^2*x", "x^3+y^3*z"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["evidence"]["a1_count"], 0);
    assert_eq!(v["results"]["evidence"]["mu_deformed"], serde_json::json!({"1/2": 10, "1/3": 10}));
}

#[test]
fn exact_strings() {
    let (_, v) = json(&["transversal", "x^3+y^3*z+x*y^2"]);
    assert_eq!(v["results"]["transversal"]["h"], "z^2+4/27");
    let (_, a) = json(&["milnor", "x^3+y^3*z+z^5"]);
    assert_eq!(a["results"]["mu"], 22);
    let (_, b) = json(&["milnor", "x^3+y^3*z+z^5"]);
    assert_eq!(a["results"], b["results"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariants", "x^2+y"]).0, 2);
    assert_eq!(run(&["invariants", "x^^2"]).0, 2);
    assert_eq!(run(&["reproduce", "nope"]).0, 2);
    let (code, out) = run(&["reproduce", "ex4.tables"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("[FAIL]"));
}

#[test]
fn text_format() {
    let (code, out) = run(&["reproduce", "counterexample"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[pass] 4*x^6+4*y^6-6*z^2*x^4*y^4 transversal discriminant empty"), "{out}");
}
