use std::process::{Command, Output};

use proptest::prelude::*;
use qjoin_cli::{run_suite, RunConfig, Suite};

fn qjoin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qjoin")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_hopf_passes() {
    let o = qjoin(&["check", "hopf", "--samples", "20", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("OK ("), "{}", stdout(&o));
}

#[test]
fn check_idempotent_lists_its_checks() {
    let o = qjoin(&["check", "idempotent"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("[PASS] idempotent/p^2 = p"));
    assert!(s.contains("[PASS] idempotent/p* = p"));
    assert!(s.ends_with("OK (3 checks)\n"));
}

#[test]
fn index_reports_minus_one() {
    let o = qjoin(&["index", "--q", "0.5", "--n", "20", "--k", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["index"], -1);
    assert_eq!(v["n"], 20);
    let o = qjoin(&["index", "--n", "12", "--k", "12", "--unitary", "U"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["index"], 1);
}

#[test]
fn index_sweep_and_precision() {
    let o = Command::new(env!("CARGO_BIN_EXE_qjoin"))
        .args(["index", "--sweep", "6,8,10"])
        .env("QJOIN_PRECISION", "fixed128")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["index"], -1);
    assert_eq!(v["results"].as_array().unwrap().len(), 3);
    assert_eq!(v["results"][0]["precision"], "fixed128");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qjoin(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(qjoin(&["index", "--q", "1.5"]).status.code(), Some(2));
    assert_eq!(qjoin(&["index", "--sweep", "10,8,12"]).status.code(), Some(2));
    assert_eq!(qjoin(&["classic", "--group", "q8"]).status.code(), Some(2));
    let o = qjoin(&["check", "corep", "--samples", "0", "--grid", "0,1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_selection_is_reported() {
    let o = qjoin(&["check", "hopf", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no checks selected"));
}

#[test]
fn classic_ops() {
    let o = qjoin(&["classic", "--group", "z2", "--op", "join", "--grid", "0,0.5,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["layers"], serde_json::json!([2, 4, 2]));
    let o = qjoin(&["classic", "--group", "z3", "--op", "eq6"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qjoin(&["classic", "--op", "census", "--depth", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stages"][2]["classes"], 26);
}

#[test]
fn json_file_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = qjoin(&["check", "classic", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], qjoin_cli::SCHEMA);
    assert_eq!(v["suite"], "classic");
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["summary"]["passed"], true);
}

#[test]
fn seeds_are_echoed_and_change_samples() {
    let mut a = RunConfig::new(Suite::Hopf);
    a.samples = 5;
    let mut b = a.clone();
    b.seed = 8;
    let ra = run_suite(&a).unwrap();
    let rb = run_suite(&b).unwrap();
    assert_eq!(ra.to_json()["config"]["seed"], 7);
    assert_eq!(rb.to_json()["config"]["seed"], 8);
    assert_eq!(run_suite(&a).unwrap().to_json_string(), ra.to_json_string());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn q_outside_unit_interval_is_rejected(num in -50i64..150) {
        let mut c = RunConfig::new(Suite::Index);
        c.q = format!("{num}/100");
        prop_assert_eq!(c.validate().is_ok(), num > 0 && num < 100);
    }

    #[test]
    fn suite_names_round_trip(i in 0usize..7) {
        let s = Suite::EACH.iter().copied().chain([Suite::All]).nth(i).unwrap();
        prop_assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        prop_assert_eq!(s.name().to_uppercase().parse::<Suite>().unwrap(), s);
    }
}
