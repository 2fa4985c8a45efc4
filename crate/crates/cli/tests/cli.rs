use std::process::{Command, Output};

use serde_json::Value;

const LINEAR: &str = r#"{"kind": "taylor", "coeffs": [[0, 0], [1, 0]]}"#;
const GOLDEN: &str = r#"{"kind": "taylor", "coeffs": [[0, 0], [1, 0], [1, 0]]}"#;

fn hdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdl")).args(args).output().expect("hdl runs")
}

fn json(args: &[&str]) -> Value {
    let out = hdl(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn missing_symbol_file_is_a_config_error() {
    let out = hdl(&["besov", "--symbol", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/definitely/not/here.json"), "{}", stderr(&out));
}

#[test]
fn bad_arguments_are_config_errors() {
    for args in [
        &["demo-nonmeasurable", "--delta", "1.0"][..],
        &["demo-nonmeasurable", "--delta", "0"],
        &["besov", "--symbol", LINEAR, "--p-grid", "linear:1:2:3"],
        &["besov", "--symbol", LINEAR, "--p-grid", "explicit:[1.25, 1.5]"],
        &["dixmier", "--symbol", LINEAR, "--t-grid", "explicit:[0.5, 10]"],
        &["hankel", "--symbol", LINEAR, "--N", "0"],
        &["hankel", "--symbol", r#"{"kind": "taylor", "coeffs": []}"#, "--N", "4"],
    ] {
        assert_eq!(hdl(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn svd_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_hdl"))
        .args(["hankel", "--symbol", GOLDEN, "--N", "8"])
        .env("HDL_SVD_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_hdl"))
        .args(["hankel", "--symbol", GOLDEN, "--N", "4"])
        .env("HDL_SVD_CAP", "4")
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["besov", "--symbol", GOLDEN][..],
        &["hankel", "--symbol", GOLDEN, "--N", "16", "--format", "csv"],
        &["demo-nonmeasurable", "--delta", "0.5"],
        &["example", "--family", "sigma"],
    ] {
        let a = hdl(args);
        let b = hdl(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn golden_ratio_hankel() {
    let r = json(&["hankel", "--symbol", GOLDEN, "--N", "6"]);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "hankel");
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let s: Vec<f64> = r["spectrum"].as_array().unwrap().iter().map(|row| num(&row["s_j"])).collect();
    assert_eq!(s.len(), 6);
    assert!((s[0] - phi).abs() < 1e-12 && (s[1] - (phi - 1.0)).abs() < 1e-12, "{s:?}");
    assert!(s[2..].iter().all(|v| v.abs() < 1e-12));
    assert!((num(&r["trace_norm"]) - 5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn linear_symbol_has_rank_one() {
    let out = hdl(&["hankel", "--symbol", LINEAR, "--N", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,s_j,cumulative,cumulative_over_log,sup_weighted"));
    let s: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(s.len(), 5);
    assert_eq!(s[0], 1.0);
    assert!(s[1..].iter().all(|&v| v == 0.0), "{s:?}");
}

#[test]
fn bergman_target_for_the_identity_symbol() {
    let r = json(&["bergman", "--symbol", LINEAR, "--alpha", "3", "--N", "400"]);
    assert!((num(&r["target"]) - 2.0).abs() < 1e-12);
    assert!((num(&r["tail_coefficient"]) - 2.0).abs() < 1e-3);
}

#[test]
fn demo_ratio_reaches_one_over_delta() {
    let r = json(&["demo-nonmeasurable", "--delta", "0.25"]);
    assert_eq!(r["pass"], true);
    let last = r["rows"].as_array().unwrap().last().unwrap();
    assert!((num(&last["ratio"]) / 4.0 - 1.0).abs() < 0.01, "{last}");
}

#[test]
fn zero_symbol_gives_zero_table() {
    let r = json(&["besov", "--symbol", r#"{"kind": "taylor", "coeffs": [[0, 0], [0, 0], [0, 0]]}"#]);
    for row in r["rows"].as_array().unwrap() {
        for key in ["integral_k1", "integral_k2", "dyadic"] {
            assert_eq!(num(&row[key]), 0.0, "{key}");
        }
    }
}

#[test]
fn besov_matches_closed_forms_for_monomials() {
    let r = json(&["besov", "--symbol", r#"{"kind": "taylor", "coeffs": [[0, 0], [0, 0], [0, 0], [0.25, 0]]}"#]);
    for row in r["rows"].as_array().unwrap() {
        for (got, want) in [("integral_k1", "golden_k1"), ("integral_k2", "golden_k2")] {
            let (a, b) = (num(&row[got]), num(&row[want]));
            assert!(((a - b) / b).abs() < 1e-6, "{got}: {a} vs {b}");
        }
    }
}

#[test]
fn example_output_feeds_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gap.json");
    let path = path.to_str().unwrap();
    let out = hdl(&["example", "--family", "gap", "--k-max", "12", "--out", path]);
    assert!(out.status.success() && out.stdout.is_empty());
    let h = json(&["hankel", "--symbol", path, "--N", "32"]);
    assert_eq!(h["symbol_kind"], "lacunary");
    assert!(num(&h["trace_norm"]) > 0.0);
    let d = json(&["dixmier", "--symbol", path]);
    for key in ["dyadic", "phi_log_average"] {
        let curve = &d["scan"][key];
        assert!(curve.is_object(), "missing {key}: {d}");
        for field in ["approach", "abscissae", "values", "admissible", "monotonicity", "extrapolation", "estimate"] {
            assert!(!curve[field].is_null(), "{key}.{field}");
        }
    }
}

#[test]
fn csv_headers() {
    let cases: [(&[&str], &str); 4] = [
        (&["besov", "--symbol", LINEAR], "p,integral_k1,integral_k2,dyadic,ratio_k2_dyadic,golden_k1,golden_k2"),
        (&["demo-nonmeasurable", "--delta", "0.5"], "k,l1,l2,ratio"),
        (&["example", "--family", "gap", "--k-max", "5"], "j,mantissa,exp2,c_j"),
        (&["dixmier", "--symbol", LINEAR], "quantity,x,value"),
    ];
    for (args, header) in cases {
        let mut args = args.to_vec();
        args.extend(["--format", "csv"]);
        let out = hdl(&args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        assert_eq!(String::from_utf8(out.stdout).unwrap().lines().next(), Some(header));
    }
}

#[test]
fn constant_bergman_symbol_is_zero() {
    let r = json(&["bergman", "--symbol", r#"{"kind": "taylor", "coeffs": [[3, 0]]}"#, "--N", "8"]);
    assert_eq!(num(&r["target"]), 0.0);
    assert!(r["spectrum"].as_array().unwrap().iter().all(|row| num(&row["s_j"]) == 0.0));
}
