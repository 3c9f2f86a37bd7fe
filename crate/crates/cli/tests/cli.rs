use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_icotomo"));
    c.env_remove("ICOTOMO_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn icotomo")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("icotomo-cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    let text = String::from_utf8_lossy(&out.stderr);
    assert!(out.status.success(), "{text}");
    assert!(!text.contains("FAIL"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    let checks = json(&out);
    assert_eq!(checks.as_array().unwrap().len(), 9);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["generate", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_1() {
    let out = run(&["generate", "--radius", "not a number"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn generate_default_patch() {
    let patch = tmp("r15.json");
    let out = run(&["generate", "--radius", "15", "--out", patch.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&patch).unwrap()).unwrap();
    assert_eq!(v["type"], "B");
    assert!(v["points"].as_array().unwrap().len() > 80_000);
}

#[test]
fn patch_slice_xray_pipeline() {
    let patch = tmp("r4.json");
    let csv = tmp("r4.csv");
    assert!(run(&["generate", "--radius", "4", "--out", patch.to_str().unwrap(), "--csv", csv.to_str().unwrap()]).status.success());
    let n = serde_json::from_str::<Value>(&std::fs::read_to_string(&patch).unwrap()).unwrap()["points"].as_array().unwrap().len();
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), n + 1);

    let slice = json(&run(&["slice", patch.to_str().unwrap(), "--lambda-index", "0"]));
    assert!(!slice["points"].as_array().unwrap().is_empty());
    assert!(slice["window_polygon"].as_array().unwrap().len() >= 3);

    let x = json(&run(&["xray", patch.to_str().unwrap(), "--dir", "tau,0,1"]));
    let total: u64 = x["lines"].as_array().unwrap().iter().map(|l| l["count"].as_u64().unwrap()).sum();
    assert_eq!(total as usize, n);
}

#[test]
fn reconstruction_round_trip() {
    let patch = tmp("r3.json");
    assert!(run(&["generate", "--radius", "3", "--out", patch.to_str().unwrap()]).status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&patch).unwrap()).unwrap();
    // patch points are doubled numerators; a point list takes exact coordinates
    let pts: Vec<Value> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .step_by(7)
        .take(12)
        .map(|p| Value::Array(p.as_array().unwrap().iter().map(|c| serde_json::json!([c[0], c[1], 2])).collect()))
        .collect();
    let set = tmp("set.json");
    std::fs::write(&set, serde_json::to_string(&pts).unwrap()).unwrap();
    let inst = tmp("inst.json");
    let out = run(&["xray", set.to_str().unwrap(), "--dir", "0,1,0", "--dir", "-1,-tau',tau", "--patch", "r3.json", "--out", inst.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let g = json(&run(&["reconstruct", inst.to_str().unwrap()]));
    assert_eq!(g.as_array().unwrap().len(), pts.len());
    let u = json(&run(&["uniq-instance", inst.to_str().unwrap()]));
    assert!(u["verdict"] == "unique" || u["verdict"] == "non_unique");
}

#[test]
fn grid_and_switching() {
    let s = json(&run(&["switching", "--dir", "1,0,0", "--dir", "0,1,0", "--dir", "0,0,1"]));
    assert_eq!(s["f"].as_array().unwrap().len(), 4);
    let f = tmp("switch_f.json");
    std::fs::write(&f, s["f"].to_string()).unwrap();
    let g = json(&run(&["grid", f.to_str().unwrap(), "--dir", "1,0,0", "--dir", "0,1,0", "--dir", "0,0,1"]));
    assert!(g.as_array().unwrap().len() >= 8);
}

#[test]
fn seeded_runs_are_reproducible() {
    let patch = tmp("r8.json");
    assert!(run(&["generate", "--radius", "8", "--out", patch.to_str().unwrap()]).status.success());
    let args = ["uniq", patch.to_str().unwrap(), "--samples", "20", "--slices", "2", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = bin().args(&args[..args.len() - 2]).env("ICOTOMO_SEED", "7").output().unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn config_file_is_honoured() {
    let cfg = tmp("cfg.json");
    std::fs::write(&cfg, r#"{"radii":[3,5],"threshold":0.5}"#).unwrap();
    let rep = json(&run(&["weyl", "--config", cfg.to_str().unwrap()]));
    assert_eq!(rep["entries"].as_array().unwrap().len(), 2);
    std::fs::write(&cfg, r#"{"radii":[5,3]}"#).unwrap();
    assert_eq!(run(&["weyl", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}
