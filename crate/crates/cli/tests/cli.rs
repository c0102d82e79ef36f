use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scroll-inflect"))
}

fn instance(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "instances", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value, Vec<u8>) {
    let out = bin().args(args).output().unwrap();
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {:?}", out.stdout));
    (out.status.code().unwrap(), doc, out.stdout)
}

#[test]
fn bounds_example() {
    let (code, doc, _) = run(&["bounds", "--r", "2", "--n", "1", "--d", "-3", "--g", "2"]);
    assert_eq!(code, 0);
    assert_eq!((doc["bound"].as_i64(), doc["delta"].as_i64()), (Some(1), Some(0)));
}

#[test]
fn estar_has_no_base_points_for_any_m() {
    let (code, doc, _) = run(&["osc", "--instance", &instance("estar.json"), "--k", "0", "--M", "all"]);
    assert_eq!(code, 0);
    let reps = doc["reports"].as_array().unwrap();
    assert_eq!(reps.len(), 9);
    assert!(reps.iter().all(|r| r["deficient_points"].as_array().unwrap().is_empty()));
    assert!(reps.iter().all(|r| r["oracle_agreement"] == true));
}

#[test]
fn eflat_main_a_witness() {
    let (code, doc, _) = run(&["verify", "mainA", "--instance", &instance("eflat.json"), "--k", "0"]);
    assert_eq!(code, 0);
    let cl = &doc["clauses"][0];
    assert_eq!(cl["id"], "k=0: not(1)=>not(2)");
    assert_eq!(cl["pass"], true);
    let w = &cl["witness"]["deficiency"];
    assert_eq!(w["point"], "O");
    assert_eq!(w["direction"], serde_json::json!(["1", "0"]));
}

#[test]
fn injected_fault_exits_two() {
    let (code, doc, _) = run(&["osc", "--instance", &instance("estar.json"), "--inject-fault"]);
    assert_eq!(code, 2);
    assert_eq!(doc["kind"], "invariant");
    let (code, _, _) = run(&["osc", "--instance", &instance("rational.json"), "--inject-fault"]);
    assert_eq!(code, 2);
}

#[test]
fn input_errors_exit_one() {
    let (code, doc, _) = run(&["sections", "--instance", "/nonexistent.json"]);
    assert_eq!(code, 1);
    assert!(doc["error"].is_string());
    let (code, _, _) = run(&["osc", "--instance", &instance("rational.json"), "--M", "all"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["verify", "mainQ", "--instance", &instance("estar.json")]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["segre", "--instance", &instance("esharp.json"), "--method", "formula"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["bounds", "--r", "2", "--n", "2", "--d", "0", "--g", "1"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"field": {"kind": "prime", "p": 7}, "curve": {"a4": 0, "a6": 0}, "bundle": {"factors": []}}"#).unwrap();
    let (code, doc, _) = run(&["curve-info", "--instance", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(doc["kind"], "input");
    let typo = dir.path().join("typo.json");
    std::fs::write(&typo, r#"{"field": {"kind": "prime", "p": 7}, "curve": {"a4": 0, "a6": 2}, "bundel": {}}"#).unwrap();
    assert_eq!(run(&["curve-info", "--instance", typo.to_str().unwrap()]).0, 1);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["project", "--instance", &instance("estar.json"), "--M", "0", "--m", "4", "--seed", "17", "--k", "2"];
    let (code, doc, a) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(doc["seed"], 17);
    let (_, _, b) = run(&args);
    assert_eq!(a, b);
    let (_, _, c) = run(&["project", "--instance", &instance("estar.json"), "--M", "0", "--m", "4", "--seed", "18"]);
    assert_ne!(a, c);
}

#[test]
fn flags_override_instance_parameters() {
    // the instance pins k = 0
    let (_, doc, _) = run(&["osc", "--instance", &instance("estar.json"), "--k", "2", "--M", "0"]);
    assert_eq!(doc["k"], 2);
    assert_eq!(doc["reports"][0]["expected_dim"], 0);
    assert!(!doc["reports"][0]["deficient_points"].as_array().unwrap().is_empty());
    let m = r#"[{"point": [3, 1], "mult": 1}, {"point": "O", "mult": -1}]"#;
    let (code, doc, _) = run(&["sections", "--instance", &instance("estar.json"), "--M", m]);
    assert_eq!(code, 0);
    assert_eq!(doc["h0"], 6);
}

#[test]
fn every_command_emits_one_document() {
    let cases: Vec<Vec<String>> = vec![
        vec!["curve-info".into(), "--instance".into(), instance("rational.json")],
        vec!["sections".into(), "--instance".into(), instance("rational.json")],
        vec!["osc".into(), "--instance".into(), instance("rational.json")],
        vec!["scan".into(), "--instance".into(), instance("eflat.json"), "--k".into(), "1".into()],
        vec!["witnesses".into(), "--instance".into(), instance("eflat.json")],
        vec!["segre".into(), "--instance".into(), instance("estar.json"), "--method".into(), "formula".into()],
        vec!["verify".into(), "mainB".into(), "--instance".into(), instance("eflat.json")],
        vec!["verify".into(), "mainBmod".into(), "--instance".into(), instance("esharp.json")],
        vec!["hypothesis-nilpotent".into(), "--instance".into(), instance("twice.json")],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, doc, raw) = run(&args);
        assert_eq!(code, 0, "{args:?}: {doc}");
        assert_eq!(raw.iter().filter(|&&b| b == b'\n').count(), 1);
    }
}
