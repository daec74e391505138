use std::process::{Command, Output};

fn g2scroll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2scroll")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_d7_prints_report() {
    let o = g2scroll(&["verify", "--d", "7", "--seed", "2", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["dims"]["q_C"], 8);
    assert_eq!(r["dims"]["q_S"], 6);
    assert_eq!(r["dims"]["q_V"], 3);
    assert_eq!(r["dims"]["q_overlap"], 1);
    assert_eq!(r["theorem_holds"], true);
    assert_eq!(r["quadric_generated"], true);
}

#[test]
fn verify_csv_has_fixed_columns() {
    let o = g2scroll(&["verify", "--d", "6", "--hc", "3*K", "--format", "csv", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,d,seed,stype_S,stype_V,q_S,q_V,q_overlap,q_C,q_sum,holds,ms"));
    assert!(lines.next().unwrap().starts_with("10007,6,0,\"(3,0)\","));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(g2scroll(&["verify", "--d", "5"]).status.code(), Some(2));
    assert_eq!(g2scroll(&["verify", "--d", "7", "--hc", "3*K"]).status.code(), Some(2));
    assert_eq!(g2scroll(&["verify", "--d", "7", "--dd", "(1,1)+rand(2)", "--p", "7"]).status.code(), Some(2));
    assert_eq!(g2scroll(&["suite", "--d", "9..6"]).status.code(), Some(2));
    assert_eq!(g2scroll(&["cone", "--e1", "5", "--e2", "0"]).status.code(), Some(2));
    // H = D + 2K: V contains S
    let o = g2scroll(&["verify", "--d", "7", "--hc", "(0,0)+(1,0)+(10006,0)+2*K", "--dd", "(0,0)+(1,0)+(10006,0)"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn instance_file_is_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    std::fs::write(&path, r#"{"p": 10007, "d": 8, "seed": 5}"#).unwrap();
    let path = path.to_str().unwrap();
    let first = g2scroll(&["verify", "--instance", path, "--no-timing"]);
    assert_eq!(first.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();

    let replay = dir.path().join("replay.json");
    std::fs::write(&replay, r["spec"].to_string()).unwrap();
    let second = g2scroll(&["verify", "--instance", replay.to_str().unwrap(), "--no-timing"]);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn classify_matches_on_last_table_row() {
    let o = g2scroll(&["classify", "--d", "7", "--hc", "3*K+(0,0)", "--dd", "K+(0,0)"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["V"]["computed"], serde_json::json!([3, 0, 0]));
    assert_eq!(r["S"]["computed"], serde_json::json!([3, 1]));
}

#[test]
fn suite_is_deterministic() {
    let args = ["suite", "--d", "6..7", "--seeds", "0..1", "--p", "10007", "--format", "csv", "--no-timing"];
    let a = g2scroll(&args);
    let b = g2scroll(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn trisecant_and_cone() {
    let o = g2scroll(&["trisecant", "--d", "9", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["collinear"], 0);

    let o = g2scroll(&["cone", "--e1", "2", "--e2", "1", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["stype_V"], serde_json::json!([2, 1, 0]));
    assert_eq!(r["geometric"], serde_json::json!([2, 1, 0]));
}
