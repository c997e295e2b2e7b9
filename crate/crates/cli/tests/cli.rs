use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ronar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ronar")).args(args).output().unwrap()
}

fn fixture(id: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("../core/fixtures/{id}.jsonl"));
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_and_rejects() {
    let ok = stdout(&ronar(&["validate", &fixture("synthetic_cup_01")]));
    assert!(ok.starts_with("ok synthetic_cup_01 task=put_cup"), "{ok}");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.jsonl");
    std::fs::write(&bad, "{\"kind\":\"nope\"}\n").unwrap();
    let o = ronar(&["validate", bad.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn sweep_writes_the_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let fixtures = PathBuf::from(fixture("synthetic_cup_01")).parent().unwrap().to_path_buf();
    stdout(&ronar(&[
        "sweep",
        fixtures.to_str().unwrap(),
        "--thresholds",
        "0,80",
        "--modalities",
        "TP;E,I,TP",
        "--out",
        out.to_str().unwrap(),
    ]));
    let csv = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "modalities,threshold,avg_frames,capture_rate,n_episodes");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("TP,0,") && lines[1].ends_with(",12"));
}

#[test]
fn keyframes_then_scene_and_analyze() {
    let ep = fixture("synthetic_cup_01");
    let events = stdout(&ronar(&["keyframes", &ep, "--threshold", "80", "--modalities", "E,I,TP"]));
    let first: serde_json::Value = serde_json::from_str(events.lines().next().unwrap()).unwrap();
    assert_eq!(first["trigger"], "planner_transition");

    assert!(!stdout(&ronar(&["scene", &ep, "--event", "2"])).trim().is_empty());
    let o = ronar(&["scene", &ep, "--event", "999"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));

    let pred: serde_json::Value = serde_json::from_str(&stdout(&ronar(&["analyze", &ep, "--task", "pred"]))).unwrap();
    assert_eq!(pred["task"], "pred");
    let loc = stdout(&ronar(&["analyze", &ep, "--task", "loc", "--mock-echo", "FAILURE_AT: 15.00"]));
    let loc: serde_json::Value = serde_json::from_str(&loc).unwrap();
    assert_eq!(loc["timestamp"], 15.0);
    assert!(!ronar(&["analyze", &ep, "--task", "loc"]).status.success());
}

#[test]
fn narrate_modes_and_bad_provider() {
    let ep = fixture("synthetic_hat_01");
    let alert = stdout(&ronar(&["narrate", &ep, "--mode", "alert"]));
    assert!(alert.lines().all(|l| l.contains("\"mode\":\"alert\"")));
    let o = ronar(&["narrate", &ep, "--provider", "/nonexistent/provider.json"]);
    assert!(!o.status.success());
    assert!(!ronar(&["narrate", &ep, "--mode", "loud"]).status.success());
}

#[test]
fn simulate_writes_episode_and_truth() {
    let dir = tempfile::tempdir().unwrap();
    let failures = dir.path().join("failures.json");
    std::fs::write(&failures, r#"[{"target_state":"pick_hat","failure_time_offset":2.0,"kind":"manipulation"}]"#).unwrap();
    let out = dir.path().join("eps");
    let path = stdout(&ronar(&[
        "simulate",
        "--task",
        "hang_hat",
        "--seed",
        "3",
        "--failures",
        failures.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]));
    assert!(stdout(&ronar(&["validate", path.trim()])).contains("failures=1"));
    let truth: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("hat_seed3.truth.json")).unwrap()).unwrap();
    assert_eq!(truth[0]["state"], "pick_hat");
    assert!(!ronar(&["simulate", "--task", "fly"]).status.success());
}
