use std::path::PathBuf;
use std::process::{Command, Output};

use mahler::codec;
use mahler_core::hypergeo::{hgsol_build, HGParams};
use mahler_core::rational::frac;
use serde_json::Value;

fn mahler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mahler")).args(args).output().expect("run mahler")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mahler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const PARAMS: &str = r#"{"alpha": ["1/3", "2/7"], "beta": ["3/11"], "gamma": ["5/4", "9/5"]}"#;

#[test]
fn duality_default_example() {
    let out = mahler(&["duality", "--L", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["D"], serde_json::json!([["1", "0"], ["0", "1"]]));
    assert_eq!(v["detR"], serde_json::json!(["1"]));
    assert_eq!(v["degree_bounds"], Value::Bool(true));
}

#[test]
fn malformed_rational_is_a_parse_error() {
    let path = scratch("bad.json", r#"{"n": 1, "f": [["1"], ["1", "1/0"]]}"#);
    let out = mahler(&["type1", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let path = scratch("broken.json", r#"{"n": 1, "f": [["1"]"#);
    let out = mahler(&["type2", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(mahler(&["duality", "--bogus"]).status.code(), Some(2));
}

#[test]
fn seeded_runs_are_identical() {
    for cmd in ["type1", "type2", "duality", "vcf"] {
        let a = mahler(&[cmd, "--L", "3", "--n", "2", "--seed", "7"]);
        let b = mahler(&[cmd, "--L", "3", "--n", "2", "--seed", "7"]);
        assert_eq!(a.status.code(), b.status.code(), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn output_reingests() {
    for cmd in ["type1", "type2", "duality"] {
        let first = mahler(&[cmd, "--L", "3", "--n", "1", "--seed", "11"]);
        assert_eq!(first.status.code(), Some(0), "{cmd}");
        let path = scratch(&format!("{cmd}.json"), std::str::from_utf8(&first.stdout).unwrap());
        let second = mahler(&[cmd, "--input", path.to_str().unwrap()]);
        assert_eq!(second.status.code(), Some(0), "{cmd}");
        assert_eq!(first.stdout, second.stdout, "{cmd}");
    }
}

#[test]
fn output_file_flag() {
    let dir = scratch("placeholder", "");
    let target = dir.with_file_name("out.json");
    let out = mahler(&["--output", target.to_str().unwrap(), "type1", "--L", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["L"], 2);
}

#[test]
fn local_grid_round_trip() {
    let p = HGParams::new(vec![frac(1, 3), frac(2, 7)], vec![frac(3, 11)], vec![frac(5, 4), frac(9, 5)], 4).unwrap();
    let sol = hgsol_build(&p).unwrap();
    let v = codec::local_grid(&sol.q);
    let back = codec::local_grid_from(&v, "q").unwrap();
    assert_eq!(back, sol.q);
    assert_eq!(codec::local_grid(&back), v);
}

#[test]
fn hln_solve_small() {
    let path = scratch("params.json", PARAMS);
    let out = mahler(&["hln", "solve", "--params", path.to_str().unwrap(), "--jet-order", "4", "--L", "3", "--N", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["residuals_zero"], Value::Bool(true));
    assert_eq!(v["residual_max_order_checked"], 3);

    let shifted = mahler(&["hln", "solve", "--params", path.to_str().unwrap(), "--n", "1", "--jet-order", "4"]);
    assert_eq!(shifted.status.code(), Some(0));
    let again = scratch("solve-out.json", std::str::from_utf8(&shifted.stdout).unwrap());
    let rerun = mahler(&["hln", "solve", "--params", again.to_str().unwrap(), "--n", "1", "--jet-order", "4"]);
    assert_eq!(rerun.stdout, shifted.stdout);

    let wrong = mahler(&["hln", "solve", "--params", path.to_str().unwrap(), "--L", "2"]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn nonpositive_integer_gamma_is_rejected() {
    let path = scratch("int.json", r#"{"alpha": ["1/3", "2/7"], "beta": ["3/11"], "gamma": ["-2", "9/5"]}"#);
    let out = mahler(&["hln", "solve", "--params", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fuchs_transform_small() {
    let path = scratch("fuchs.json", PARAMS);
    let out = mahler(&["fuchs", "transform", "--params", path.to_str().unwrap(), "--n", "1", "--jet-order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["charpoly_infinity_after"].is_array());
    assert_eq!(v["residues_after"].as_array().unwrap().len(), 3);
}

#[test]
fn oracle_small() {
    let path = scratch("measures.json", r#"[[["1", "1"], ["2", "1/2"], ["-1", "3"]], [["1/2", "2"], ["3", "1"]]]"#);
    let out = mahler(&["hln", "oracle", "--measures", path.to_str().unwrap(), "--k", "1", "--nvec", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["equal"], Value::Bool(true));
    assert_eq!(v["determinant"], v["symmetrized"]);

    let again = scratch("oracle-out.json", std::str::from_utf8(&out.stdout).unwrap());
    let rerun = mahler(&["hln", "oracle", "--measures", again.to_str().unwrap(), "--k", "1", "--nvec", "2,1"]);
    assert_eq!(rerun.stdout, out.stdout);

    let thin = mahler(&["hln", "oracle", "--measures", path.to_str().unwrap(), "--k", "0", "--nvec", "1,3"]);
    assert_eq!(thin.status.code(), Some(3));
}

#[test]
fn verify_all_passes() {
    let out = mahler(&["verify-all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stderr).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}
