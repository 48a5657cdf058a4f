use std::f64::consts::PI;
use std::process::{Command, Output};

use biortho_core::hyp::{eval_p, Params};
use biortho_core::c64;
use serde_json::Value;

fn biortho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biortho"))
        .args(args)
        .env_remove("BIORTHO_QUAD_NODES")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn re(v: &Value) -> f64 {
    v["re"].as_f64().unwrap()
}

#[test]
fn eval_trivial_values() {
    let out = biortho(&["eval", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(re(&json(&out)["outputs"][0]["value"]), 1.0);

    let out = biortho(&["eval", "--n", "1", "--z", "0,0", "--alpha", "1,0", "--beta", "0,0"]);
    assert!((re(&json(&out)["outputs"][0]["value"]) - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn eval_matches_library() {
    let out = biortho(&["eval", "--n", "5", "--z", "-2,0", "--z", "0.3,0.4"]);
    let v = json(&out);
    let params = Params::real(1.0, 0.25);
    for (i, z) in [c64(-2.0, 0.0), c64(0.3, 0.4)].into_iter().enumerate() {
        let want = eval_p(5, z, params).unwrap();
        let got = &v["outputs"][i]["value"];
        // serde_json's default float parser may land one ulp away
        assert!((re(got) - want.re).abs() <= 1e-15 * want.norm());
        assert!((got["im"].as_f64().unwrap() - want.im).abs() <= 1e-15 * want.norm());
    }
}

#[test]
fn eval_reports_parameter_poles() {
    let out = biortho(&["eval", "--n", "3", "--alpha", "-0.5,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(json(&out)["outputs"][0]["detail"].as_str().unwrap().contains("pole"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(biortho(&["eval", "--n", "x"]).status.code(), Some(2));
    assert_eq!(biortho(&["eval", "--n", "1", "--z", "1,2,3"]).status.code(), Some(2));
    assert_eq!(biortho(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn certify_single_point_and_excluded_point() {
    let out = biortho(&["certify-expansion", "--n-list", "40", "--z-list", "-2,0", "--p1", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["outputs"].as_array().unwrap().len(), 2);

    let out = biortho(&["certify-expansion", "--n-list", "10", "--z-list", "-2,0;1,0", "--p1", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    let rows = v["outputs"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["detail"].is_string() && r["z"]["re"] == 1.0));
    assert!(rows.iter().any(|r| r["pass"] == true));
}

#[test]
fn certify_is_byte_identical_across_runs() {
    let args = ["certify-expansion", "--n-list", "5,20", "--z-list", "-2,0;0.2,1.5;3,0"];
    let a = biortho(&args);
    let b = biortho(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn askey_examples() {
    let out = biortho(&["askey", "--n", "7", "--theta", "0", "--k", "2", "--alpha", "1,0", "--beta", "0.25,0"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json(&out)["outputs"][0];
    assert!(row["error"].as_f64().unwrap() < 1e-28);
    assert_eq!(row["bound"].as_f64().unwrap(), 0.0);

    let out = biortho(&["askey", "--n", "1000", "--theta", "pi/2", "--k", "0"]);
    assert_eq!(out.status.code(), Some(0));
    for row in json(&out)["outputs"].as_array().unwrap() {
        assert!(row["error"].as_f64().unwrap() <= row["bound"].as_f64().unwrap());
        assert!((row["theta"].as_f64().unwrap() - PI / 2.0).abs() < 1e-15);
    }
}

#[test]
fn askey_sweep_as_csv() {
    let out = biortho(&["askey", "--n", "10,100,1000", "--theta", "pi/2", "--k", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let err_col = header.iter().position(|h| *h == "error").unwrap();
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 6);
    let errs: Vec<f64> = rows[..3].iter().map(|r| r[err_col].parse().unwrap()).collect();
    assert!(errs[2] < errs[1] && errs[1] < errs[0]);
}

#[test]
fn electro_examples() {
    let out = biortho(&["electro", "--n", "1", "--p", "1", "--q", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for row in v["outputs"].as_array().unwrap() {
        assert!((row["root_theta"].as_f64().unwrap() - PI).abs() < 1e-12);
        if let Some(m) = row["min_theta"].as_f64() {
            assert!((m - PI).abs() < 1e-8);
        }
    }

    let out = biortho(&["electro", "--n", "4", "--p", "2", "--q", "0.3", "--starts", "5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["bounds"]["max_deviation"].as_f64().unwrap() < 1e-6);
    let starts: Vec<u64> = v["outputs"].as_array().unwrap().iter().filter_map(|r| r["start"].as_u64()).collect();
    assert_eq!(starts.len(), 20);
}

#[test]
fn biorth_examples() {
    let out = biortho(&["biorth", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["bounds"]["max_off_diagonal"].as_f64().unwrap() < 1e-8);
    assert!(v["bounds"]["max_diagonal_error"].as_f64().unwrap() < 1e-8);

    let out = biortho(&["biorth", "--nmax", "0", "--alpha", "1,0", "--beta", "0.25,0"]);
    let v = json(&out);
    assert_eq!(v["outputs"].as_array().unwrap().len(), 1);
    let row = &v["outputs"][0];
    assert!((re(&row["value"]) - re(&row["reference"])).abs() < 1e-10);
}

#[test]
fn quadrature_nodes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_biortho"))
        .args(["biorth", "--nmax", "1"])
        .env("BIORTHO_QUAD_NODES", "801")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["inputs"]["quad_nodes"], "801");

    let out = Command::new(env!("CARGO_BIN_EXE_biortho"))
        .args(["biorth", "--nmax", "1"])
        .env("BIORTHO_QUAD_NODES", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_written_to_file() {
    let path = std::env::temp_dir().join(format!("biortho-report-{}.json", std::process::id()));
    let out = biortho(&["eval", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "eval");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn timing_is_zero_unless_requested() {
    let v = json(&biortho(&["eval", "--n", "2"]));
    assert_eq!(v["timing_ms"], 0);
    let v = json(&biortho(&["--timing", "eval", "--n", "2"]));
    assert!(v["timing_ms"].is_u64());
}
