use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lieext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieext"))
        .args(args)
        .env_remove("LIEEXT_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lieext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn catalog_output_loads_back() {
    let out = lieext(&["catalog", "s1:6:beta=3/2"]);
    assert!(out.status.success());
    let p = scratch("s1.json", std::str::from_utf8(&out.stdout).unwrap());
    let h = lieext(&["h2-twisted", "--algebra", p.to_str().unwrap(), "--weights", "-13/2,0,0,0,0,0,0"]);
    assert!(h.status.success(), "{}", String::from_utf8_lossy(&h.stderr));
    assert_eq!(json(&h)["h"], 1);
}

#[test]
fn filiform_h2_dims() {
    let v = json(&lieext(&["h2-central", "--catalog", "nn1:7"]));
    assert_eq!((v["z"].as_u64(), v["b"].as_u64(), v["h"].as_u64()), (Some(9), Some(5), Some(4)));
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}

#[test]
fn extend_and_normalize_a_filiform_line() {
    let cocycle = r#"{"dim":6,"components":[[{"i":1,"j":6,"coeff":"-1"},{"i":2,"j":5,"coeff":"1"},{"i":3,"j":4,"coeff":"-1"}]]}"#;
    let p = scratch("psi.json", cocycle);
    let ext = lieext(&["extend-central", "--catalog", "nn1:6", "--cocycle", p.to_str().unwrap()]);
    assert!(ext.status.success(), "{}", String::from_utf8_lossy(&ext.stderr));
    assert_eq!(json(&ext)["dim"], 7);
    let norm = lieext(&["normalize", "--catalog", "nn1:6", "--cocycle", p.to_str().unwrap()]);
    assert!(norm.status.success(), "{}", String::from_utf8_lossy(&norm.stderr));
    assert!(json(&norm)["rep"].as_str().unwrap().starts_with("nabla1"));
}

#[test]
fn solvable_extension_of_sn2() {
    let cocycle = r#"{"dim":7,"components":[[{"i":3,"j":7,"coeff":"1"}]]}"#;
    let p = scratch("sn2psi.json", cocycle);
    let out = lieext(&[
        "extend-solvable", "--catalog", "sn2:5", "--cocycle", p.to_str().unwrap(), "--alpha", "-4", "--beta", "-1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["dim"], 8);
}

#[test]
fn verify_exit_codes() {
    let ok = lieext(&["verify", "--n-max", "6", "--sections", "nn1-h2,q-h2", "--format", "text"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("total:"));
    let red = lieext(&["verify", "--n-max", "5", "--sections", "s4"]);
    assert_eq!(red.status.code(), Some(1));
    let v = json(&red);
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
    assert_eq!(v["config"]["seed_source"], "default");
    let bad = lieext(&["verify", "--n-max", "20"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lieext"))
        .args(["verify", "--n-max", "4", "--sections", "nn1-orbits"])
        .env("LIEEXT_SEED", "7")
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["seed_source"], "env:LIEEXT_SEED");
}

#[test]
fn report_written_to_file() {
    let dir = std::env::temp_dir().join(format!("lieext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("report.json");
    let out = lieext(&["verify", "--n-max", "4", "--sections", "nn1-h2", "--output", p.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["summary"]["total"], 5);
}

#[test]
fn malformed_inputs_exit_with_two() {
    let p = scratch("bad.json", r#"{"dim":3,"brackets":[{"i":2,"j":1,"terms":[{"coeff":"1","k":3}]}]}"#);
    let out = lieext(&["h2-central", "--algebra", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("brackets[0]"));
    let out = lieext(&["h2-central", "--catalog", "nn1:two"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lieext(&["h2-central"]);
    assert_eq!(out.status.code(), Some(2));
}
