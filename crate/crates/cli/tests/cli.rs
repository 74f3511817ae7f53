use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use galton_core::verify::ExperimentConfig;
use serde_json::Value;

fn grank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grank"))
        .args(args)
        .env_remove("GALTON_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

#[test]
fn equal_samples_have_no_deficiency() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    fs::write(&x, "3\n1\n2\n").unwrap();
    let x = x.to_str().unwrap();
    let v: Value = serde_json::from_str(&stdout(&grank(&["galton", "compute", "--x", x, "--y", x, "--json"]))).unwrap();
    assert_eq!(v["index"]["gamma_hat"], "0");
    assert_eq!(v["index"]["galton_count"], 0);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert!(v["input_hash"].as_str().is_some_and(|h| h.len() == 64));
}

#[test]
fn rank_count_pmf_is_uniform() {
    let text = stdout(&grank(&["oracle", "galton-pmf", "--n", "4"]));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["0 1/5", "1 1/5", "2 1/5", "3 1/5", "4 1/5"]);
}

#[test]
fn finite_oracle_reports_exact_values() {
    let f = r#"{"kind":"bernoulli","p":"3/5"}"#;
    let g = r#"{"kind":"bernoulli","p":"3/10"}"#;
    let v: Value = serde_json::from_str(&stdout(&grank(&["oracle", "index", "--F", f, "--G", g, "--json"]))).unwrap();
    assert_eq!(v["gamma"], "3/10");
    assert_eq!(v["ties"], "7/10");
    let out = grank(&["oracle", "index", "--F", f, "--G", r#"{"kind":"uniform01"}"#]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn limit_sample_is_reproducible_and_labelled() {
    let spec = r#"{"law":"inner_t","t0":0.5,"r_left":2,"r_right":2,"c_left":-1,"c_right":1,"lambda":0.5}"#;
    let run = |threads: &str| stdout(&grank(&["limit-sample", "--spec", spec, "--reps", "200", "--seed", "5", "--threads", threads]));
    let one = run("1");
    assert_eq!(one, run("3"));
    let mut lines = one.lines();
    let head = lines.next().unwrap();
    assert!(head.contains("seed=5") && head.contains("hash=") && head.contains(env!("CARGO_PKG_VERSION")));
    assert_eq!(lines.next(), Some("value"));
    assert_eq!(lines.count(), 200);
}

#[test]
fn contact_scan_finds_the_tangent_crossing() {
    let v: Value = serde_json::from_str(&stdout(&grank(&[
        "contact",
        "analyze",
        "--F",
        r#"{"kind":"uniform01"}"#,
        "--G",
        r#"{"kind":"power_tangent_quantile","r":2}"#,
        "--json",
    ])))
    .unwrap();
    let contacts = v["contacts"].as_array().unwrap();
    assert_eq!(contacts.len(), 1);
    assert!((contacts[0]["t0"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(v["limit_terms"][0]["term"], "inner");
}

#[test]
fn verify_writes_a_labelled_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let csv = dir.path().join("csv");
    let config = configs_dir().join("ex42_r2.json");
    stdout(&grank(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--reps",
        "200",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]));
    let report: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["seed"], 3);
    assert_eq!(report["config"]["reps"], 200);
    assert!(report["config_hash"].as_str().is_some_and(|h| h.len() == 64));
    let slope = report["rate"]["slope"].as_f64().unwrap();
    assert!((slope + 0.25).abs() < 0.15, "slope {slope}");
    let samples = fs::read_to_string(csv.join("samples.csv")).unwrap();
    assert_eq!(samples.lines().count(), 2 + 5 * 200);
    assert!(csv.join("limit.csv").exists());
}

#[test]
fn usage_and_domain_errors_have_distinct_codes() {
    assert_eq!(grank(&["bogus"]).status.code(), Some(2));
    assert_eq!(grank(&["oracle", "galton-pmf", "--n", "3", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(grank(&["oracle", "galton-pmf", "--n", "0"]).status.code(), Some(1));
    let bad = grank(&["index", "--F", r#"{"kind":"normal","sigma":-1}"#, "--G", r#"{"kind":"uniform01"}"#]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}

#[test]
fn shipped_configs_round_trip() {
    let mut seen = 0;
    for entry in fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "json") {
            continue;
        }
        let text = fs::read_to_string(&path).unwrap();
        let first: ExperimentConfig = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        first.validate().unwrap();
        let second: ExperimentConfig = serde_json::from_str(&serde_json::to_string(&first).unwrap()).unwrap();
        assert_eq!(first, second, "{}", path.display());
        assert_eq!(first.hash(), second.hash());
        seen += 1;
    }
    assert!(seen >= 6);
}
