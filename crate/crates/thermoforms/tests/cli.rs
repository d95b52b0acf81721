//! End-to-end runs of the binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermoforms")).args(args).env_remove("THERMOFORMS_THREADS").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["forms", "--model", "ideal", "--n", "-1", "--at", "1,1"][..],
        &["domains", "--model", "vdw", "--n", "3", "--T", "1:0.5:10", "--v", "1:2:3"],
        &["oracle", "--family", "poisson", "--lambda", "0"],
        &["forms", "--model", "ideal", "--n", "3", "--at", "1"],
        &[],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_thermoforms"))
        .args(["oracle", "--family", "gaussian", "--lambda", "0"])
        .env("THERMOFORMS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_domain_point_exits_1() {
    let out = run(&["forms", "--model", "vdw", "--n", "3", "--at", "-5,1"]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("(-5, 1)"), "{msg}");
}

#[test]
fn ideal_forms() {
    let d = json(&["forms", "--model", "ideal", "--n", "3", "--at", "1,1"]);
    assert_eq!(floats(&d["sigma2"]["components"]), [1.5, 0.0, 1.0]);
    assert_eq!(d["sigma2"]["class"], "positive_definite");
    assert_eq!(floats(&d["sigma4"]["poly"]), [15.75, 0.0, 9.0, 0.0, 9.0]);
    assert_eq!(d["processes"]["count"], "1");
    let q = floats(&d["processes"]["slopes"]);
    assert!((q[0] + 1.5f64.cbrt()).abs() < 1e-14);
}

#[test]
fn critical_point_has_three_processes() {
    let text = stdout(&["processes", "--model", "vdw", "--n", "3", "--grid", "1:1.2:2,1:2:2"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("T,v,root_count,disc"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0].parse::<f64>().unwrap(), 1.0);
    assert_eq!(first[1].parse::<f64>().unwrap(), 1.0);
    assert_eq!(first[2], "3");
}

#[test]
fn exponential_oracle_at_zero() {
    let d = json(&["oracle", "--family", "exponential", "--lambda", "0"]);
    let a = &d["analytic"];
    assert_eq!((a["sigma2"].as_f64(), a["sigma3"].as_f64(), a["sigma4"].as_f64()), (Some(1.0), Some(2.0), Some(9.0)));
    for (k, want) in [("sigma2", 1.0), ("sigma3", 2.0), ("sigma4", 9.0)] {
        assert!((d["numeric"][k].as_f64().unwrap() - want).abs() <= 1e-8, "{k}");
    }
}

#[test]
fn domains_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let args = ["domains", "--model", "vdw", "--n", "3", "--T", "0.2:1.4:5", "--v", "0.4:10:4", "--out", path.to_str().unwrap()];
    assert!(stdout(&args).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "T,v,e,sigma2_class,sigma4_class,process_count,disc,boundary_flags");
    assert_eq!(lines.len(), 1 + 5 * 4);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 8));
}

#[test]
fn domains_json_shape() {
    let d = json(&["domains", "--model", "vdw", "--n", "3", "--T", "0.5:1:2", "--v", "1:2:3", "--format", "json"]);
    assert_eq!(d["model"], "vdw");
    assert_eq!(d["grid"]["T"]["steps"], 2);
    assert_eq!(d["grid"]["v"]["steps"], 3);
    let cells = d["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 6);
    // row-major: temperature outer, volume inner
    assert_eq!(cells[1]["T"].as_f64(), Some(0.5));
    assert_eq!(cells[1]["v"].as_f64(), Some(1.5));
    for key in ["e", "sigma2_class", "sigma4_class", "process_count", "disc", "boundary_flags"] {
        assert!(cells[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn curve_reports_its_stop() {
    let out = run(&["curve", "--model", "ideal", "--n", "3", "--start", "1,1", "--max-len", "0.01"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("max_length after 11 points"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("e,v,T"));
    assert_eq!(text.lines().count(), 12);
}
