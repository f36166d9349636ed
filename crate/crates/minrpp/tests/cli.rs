use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minrpp")).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_minrpp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const Q: [&str; 6] = ["--type", "A3", "--orient", "1>2<3", "--m", "2"];

#[test]
fn heap_dot_has_nine_nodes() {
    let out = run(&["heap", "--type", "A5", "--orient", "1<2<3<4<5", "--m", "3", "--dot"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("rankdir=LR"));
    assert_eq!(text.matches("[label=").count(), 9);
    assert_eq!(text.matches("->").count(), 12);
}

#[test]
fn rho_of_running_example() {
    let dir = std::env::temp_dir().join(format!("minrpp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let qfile = dir.join("q.json");
    std::fs::write(&qfile, r#"{"family":"A","rank":3,"arrows":[[1,2],[3,2]]}"#).unwrap();
    let out = run(&["rho", "--quiver", qfile.to_str().unwrap(), "--m", "2", "--mults", r#"{"010":1,"011":1,"110":1}"#]);
    let v = json_of(&out);
    assert_eq!(v["partitions"], serde_json::json!([[1], [2, 1], [1]]));
    let mut args = vec!["rho"];
    args.extend(Q);
    args.extend(["--mults", r#"{"010":2,"111":1}"#]);
    assert_eq!(json_of(&run(&args))["partitions"], serde_json::json!([[1], [3], [1]]));
}

#[test]
fn rho_and_inv_are_byte_stable() {
    let mut args = vec!["--json", "rho"];
    args.extend(Q);
    args.extend(["--mults", r#"{"011":2,"110":1,"111":3}"#]);
    let first = run(&args);
    assert!(first.status.success());
    let filling = String::from_utf8(first.stdout.clone()).unwrap();
    let back = json_of(&run_stdin(&["--json", "inv", "--filling", "-"], &filling));
    assert_eq!(back["mults"], serde_json::json!({"011": 2, "110": 1, "111": 3}));
    let mults = back["mults"].to_string();
    let mut again = vec!["--json", "rho"];
    again.extend(Q);
    again.extend(["--mults", mults.as_str()]);
    assert_eq!(run(&again).stdout, first.stdout);
}

#[test]
fn periodicity_reports_order_four() {
    let out = run(&["verify", "periodicity", "--type", "A3", "--m", "2", "--N", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["detail"]["order"], 4);
    assert_eq!(v["results"][0]["detail"]["h"], 4);
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "axioms", "--type", "D5"],
        vec!["verify", "oracle", "--type", "A4", "--orient", "1<2>3<4", "--m", "2", "--count", "4"],
        vec!["verify", "hg", "--type", "A4", "--m", "2"],
        vec!["verify", "rsk", "--type", "A4", "--m", "3"],
        vec!["verify", "gk", "--type", "A3", "--m", "1"],
        vec!["verify", "genfun", "--type", "A3", "--m", "2", "--degree", "5", "--filter", "every"],
        vec!["verify", "togref", "--type", "A2", "--m", "1"],
        vec!["verify", "periodicity", "--type", "D4", "--m", "1", "--N", "extended", "--count", "20"],
        vec!["verify", "periodicity", "--type", "E6", "--m", "1", "--N", "1", "--count", "20", "--seed", "4"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json_of(&out)["passed"], true);
    }
}

#[test]
fn verify_is_deterministic_given_seed() {
    let args = ["verify", "oracle", "--type", "D4", "--m", "1", "--count", "3", "--seed", "17"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn env_config_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_minrpp"))
        .args(["verify", "oracle", "--type", "A3", "--m", "2", "--count", "2"])
        .env("ORACLE_PRIME", "101")
        .env("ORACLE_SAMPLES", "3")
        .output()
        .unwrap();
    let v = json_of(&out);
    assert_eq!(v["results"][0]["detail"]["prime"], 101);
    assert_eq!(v["results"][0]["detail"]["samples"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_minrpp"))
        .args(["verify", "oracle", "--type", "A3", "--m", "2", "--count", "1"])
        .env("ORACLE_PRIME", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn toggle_promote_and_split() {
    let mut args = vec!["--json", "rho"];
    args.extend(Q);
    args.extend(["--mults", r#"{"010":1,"111":1}"#]);
    let filling = String::from_utf8(run(&args).stdout).unwrap();
    let mut v: Value = serde_json::from_str(&filling).unwrap();
    v["N"] = 3.into();
    let f = v.to_string();
    let t = json_of(&run(&["toggle", "--filling", &f, "--vertex", "1"]));
    let t2 = json_of(&run(&["toggle", "--filling", &t.to_string(), "--vertex", "1"]));
    assert_eq!(t2["values"], v["values"]);
    let p = json_of(&run(&["promote", "--filling", &f, "--times", "4"]));
    assert_eq!(p["values"], v["values"]);

    let mut ext = v.clone();
    ext["N"] = "extended".into();
    ext["values"]["111"] = serde_json::json!({"cofin": 3});
    ext["values"]["011"] = serde_json::json!({"cofin": 1});
    ext["values"]["110"] = serde_json::json!({"cofin": 2});
    ext["values"]["010"] = serde_json::json!({"cofin": 0});
    let s = json_of(&run(&["split", "--filling", &ext.to_string()]));
    assert_eq!(s["filter"], serde_json::json!([]));
    let p = json_of(&run(&["promote", "--filling", &ext.to_string(), "--times", "4"]));
    assert_eq!(p["values"], ext["values"]);

    let mut args = vec!["split"];
    args.extend(Q);
    args.extend(["--filter", "011,110,111"]);
    let s = json_of(&run(&args));
    assert_eq!(s["filter"], serde_json::json!(["011", "110", "111"]));
    let mut args = vec!["split"];
    args.extend(Q);
    args.extend(["--filter", "010"]);
    assert_eq!(run(&args).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["rho", "--type", "A3", "--m", "2"],
        vec!["rho", "--type", "A3", "--m", "2", "--mults", r#"{"100":1}"#],
        vec!["heap", "--type", "D4", "--m", "2"],
        vec!["heap", "--type", "B3", "--m", "1"],
        vec!["verify", "hg", "--type", "A3", "--orient", "1<2<3", "--m", "2"],
        vec!["inv", "--filling", r#"{"heap":{}}"#],
        vec!["nonsense"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn roots_and_iso_type() {
    let v = json_of(&run(&["roots", "--type", "E6"]));
    assert_eq!(v["roots"].as_array().unwrap().len(), 36);
    assert_eq!(v["coxeter_number"], 12);
    assert_eq!(v["minuscule"], serde_json::json!([1, 5]));
    let dot = run(&["roots", "--type", "A3", "--dot"]);
    assert_eq!(String::from_utf8(dot.stdout).unwrap().matches("label=").count(), 6);
    let v = json_of(&run(&["iso-type", "--type", "D6", "--m", "6"]));
    assert_eq!(v["iso_type"], "J([2]x[4])");
    assert_eq!(v["size"], 15);
}
