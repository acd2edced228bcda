use std::io::Write;
use std::process::{Command, Output};

use knotcalc::stevedore::Expected;
use knotcalc::table::KnotTable;
use serde_json::Value;

fn knotcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotcalc"))
        .args(args)
        .env_remove("KNOTCALC_MAX_CROSSINGS")
        .env_remove("KNOTCALC_WORKERS")
        .env_remove("KNOTCALC_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = knotcalc(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn unknot_all_invariants() {
    let (code, v) = json(&["invariants", "--pd", "O"]);
    assert_eq!(code, 0);
    let inv = &v["report"]["invariants"];
    assert_eq!(inv["jones"], "1");
    assert_eq!(inv["alexander"], "1");
    assert_eq!(inv["determinant"], 1);
    assert_eq!(inv["signature"], 0);
    assert_eq!(inv["genus"], 0);
    assert_eq!(inv["fibered"], "pass");
    assert!(v["diagnostics"]["elapsed_ms"].is_number());
}

#[test]
fn stevedore_alexander() {
    let (code, v) = json(&["invariants", "--knot", "6_1", "--which", "alexander,fibered"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["invariants"]["alexander"], "2t^-1 - 5 + 2t");
    assert_eq!(v["report"]["invariants"]["fibered"], "fail: alexander not monic");
}

#[test]
fn file_inputs() {
    let braid = temp_file("s1 s2^-1 s1 s2^-1\n");
    let (code, v) = json(&["invariants", braid.path().to_str().unwrap(), "--which", "alexander"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["invariants"]["alexander"], "t^-1 - 3 + t");
    let pd = temp_file("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]");
    let (code, v) = json(&["invariants", pd.path().to_str().unwrap(), "--which", "determinant"]);
    assert_eq!((code, v["report"]["invariants"]["determinant"].clone()), (0, Value::from(3)));
}

#[test]
fn links_skip_knot_invariants() {
    let (code, v) = json(&["invariants", "--braid", "s1 s1"]);
    assert_eq!(code, 0);
    let inv = v["report"]["invariants"].as_object().unwrap();
    assert!(inv.contains_key("jones") && !inv.contains_key("alexander"));
    let (code, _) = json(&["invariants", "--braid", "s1 s1", "--which", "signature"]);
    assert_eq!(code, 2);
}

#[test]
fn malformed_input_exits_2() {
    let out = knotcalc(&["invariants", "--pd", "X[1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    assert_eq!(knotcalc(&["invariants", "--which", "bogus", "--pd", "O"]).status.code(), Some(2));
    assert_eq!(knotcalc(&["invariants"]).status.code(), Some(2));
}

#[test]
fn verify_command_passes() {
    let (code, v) = json(&["verify-paper"]);
    assert_eq!(code, 0);
    let checks = v["report"]["checks"].as_array().unwrap();
    let names: Vec<_> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, knotcalc::stevedore::CHECKS);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn perturbed_kauffman_is_localized() {
    let mut exp = Expected::bundled();
    exp.kauffman_f = format!("{} + a^6", exp.kauffman_f);
    let f = temp_file(&serde_json::to_string(&exp).unwrap());
    let out = knotcalc(&["--format", "json", "verify-paper", "--expected", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let bad: Vec<_> = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(bad, vec!["kauffman_f"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("first failed identity: kauffman_f"), "{err}");
    assert!(err.contains("computed:") && err.contains("expected:"));
}

#[test]
fn crossing_cap_is_a_resource_limit() {
    let out = knotcalc(&["--max-crossings", "10", "verify-paper"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("first failed identity: cable_jones"));
    // same through the environment
    let out = Command::new(env!("CARGO_BIN_EXE_knotcalc"))
        .args(["verify-paper"])
        .env("KNOTCALC_MAX_CROSSINGS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(knotcalc(&["--max-crossings", "4", "invariants", "--knot", "6_1", "--which", "jones"]).status.code(), Some(3));
}

#[test]
fn table_list_and_verify() {
    let (code, v) = json(&["table", "list"]);
    assert_eq!(code, 0);
    let names: Vec<_> = v["report"]["knots"].as_array().unwrap().iter().map(|k| k["name"].as_str().unwrap()).collect();
    for n in ["3_1", "4_1", "6_1"] {
        assert!(names.contains(&n));
    }
    let (code, v) = json(&["table", "verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["diffs"].as_array().unwrap().len(), 0);

    let mut t = KnotTable::bundled();
    t.knots.iter_mut().find(|k| k.name == "4_1").unwrap().jones = "t^-2 - t^-1 + 1 - t + t^3".into();
    let f = temp_file(&serde_json::to_string(&t).unwrap());
    let (code, v) = json(&["table", "verify", "--table", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let diffs = v["report"]["diffs"].as_array().unwrap();
    assert_eq!(diffs.len(), 1);
    assert_eq!((diffs[0]["name"].as_str(), diffs[0]["field"].as_str()), (Some("4_1"), Some("jones")));
}

#[test]
fn cable_command() {
    let (code, v) = json(&["cable", "--knot", "3_1", "--framing", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["linking_number"], -1);
    let ids = v["report"]["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 3);
    assert!(ids.iter().all(|i| i["holds"] == true));
    let (code, v) = json(&["cable", "--pd", "O", "--framing", "0", "--checks", "hat"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["cable_jones"], "-t^-1/2 - t^1/2");
}

#[test]
fn text_output_is_stable() {
    let a = knotcalc(&["--workers", "1", "verify-paper"]);
    let b = knotcalc(&["--workers", "3", "verify-paper"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).ends_with("9/9 identities hold\n"));
}
