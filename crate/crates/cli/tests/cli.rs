use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_strongid"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_cycle_writes_edge_list() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("c100.txt");
    let out = run(&["gen", "cycle", "--n", "100", "--out", s(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "strongid/1");
    assert_eq!(v["m"], 100);
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 101);
    assert!(text.starts_with("100 100\n0 1\n0 99\n"));
}

#[test]
fn gen_requires_seed_for_random_kinds() {
    let dir = TempDir::new().unwrap();
    let out = run(&["gen", "gnp", "--n", "10", "--p", "0.5", "--out", s(&dir.path().join("g.txt"))]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "MissingArgument");
}

#[test]
fn gen_lemma_reports_infeasible_p() {
    let dir = TempDir::new().unwrap();
    let out = run(&["gen", "lemma", "--n", "20", "--y", "3", "--seed", "1", "--out", s(&dir.path().join("g.txt"))]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["kind"], "InfeasibleP");
}

#[test]
fn gen_lemma_prints_verdict() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("lemma.txt");
    let out = run(&["gen", "lemma", "--n", "1441", "--y", "3", "--seed", "7", "--out", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let verdict = &v["verdict"];
    for key in ["degree_ok", "common_ok", "strong_ok", "connected_ok"] {
        assert_eq!(verdict[key], true, "{key}");
    }
    assert!(verdict["attempts_used"].as_u64().unwrap() >= 1);
    assert!(std::fs::metadata(&path).unwrap().len() > 0);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c4 = write(dir.path(), "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let c6 = write(dir.path(), "c6.txt", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");

    let out = run(&["verify", "--graph", s(&c4), "--code", "0,1,2,3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);

    let out = run(&["verify", "--graph", s(&c6), "--code", "0,3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!((v["witness"]["v"].as_u64(), v["witness"]["u"].as_u64()), (Some(0), Some(1)));

    let code_file = write(dir.path(), "code.txt", "# ids\n0 1\n2 3\n");
    let out = run(&["verify", "--graph", s(&c4), "--code-file", s(&code_file), "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["verify", "--graph", s(&dir.path().join("missing.txt")), "--code", "0", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let broken = write(dir.path(), "bad.txt", "2 1\n0 5\n");
    let out = run(&["verify", "--graph", s(&broken), "--code", "0", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], "ParseError");
    assert!(err["error"]["message"].as_str().unwrap().contains("line 2"));

    let out = run(&["verify", "--graph", s(&c4), "--code", "0,9", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_and_its_failure_mode() {
    let dir = TempDir::new().unwrap();
    let pet = dir.path().join("petersen.txt");
    assert!(run(&["gen", "petersen", "--out", s(&pet)]).status.success());

    let out = run(&["construct", "--graph", s(&pet), "--r", "2", "--d", "1", "--q", "0.5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["q_used"], 0.5);
    assert_eq!(v["sizes"]["code"].as_u64().unwrap() as usize, v["code"].as_array().unwrap().len());

    let k5 = dir.path().join("k5.txt");
    assert!(run(&["gen", "complete", "--n", "5", "--out", s(&k5)]).status.success());
    let out = run(&["construct", "--graph", s(&k5), "--r", "1", "--d", "1", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["achieved_strong_index"], 0);
}

#[test]
fn exact_command() {
    let dir = TempDir::new().unwrap();
    let c4 = write(dir.path(), "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let out = run(&["exact", "--graph", s(&c4), "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["theta"], 4);

    let k3 = write(dir.path(), "k3.txt", "3 3\n0 1\n1 2\n0 2\n");
    let out = run(&["exact", "--graph", s(&k3), "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["theta"].is_null());

    let c30 = dir.path().join("c30.txt");
    assert!(run(&["gen", "cycle", "--n", "30", "--out", s(&c30)]).status.success());
    let out = run(&["exact", "--graph", s(&c30), "--r", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let c26 = dir.path().join("c26.txt");
    assert!(run(&["gen", "cycle", "--n", "26", "--out", s(&c26)]).status.success());
    let out = bin()
        .args(["exact", "--graph", s(&c26), "--r", "1"])
        .env("STRONGID_EXACT_CAP", "26")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["theta"].as_u64().unwrap() >= 9);
}

#[test]
fn bounds_command() {
    let out = run(&["bounds", "--n", "216", "--delta-max", "2", "--r", "1", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lower"], 72.0);
    assert!((v["upper"].as_f64().unwrap() - 215.0).abs() < 1e-9);
    assert!((v["q_star"].as_f64().unwrap() - 0.990741).abs() < 1e-6);

    let out = run(&["bounds", "--n", "1441", "--delta-max", "233", "--r", "1", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["bounds", "--n", "10", "--delta-max", "1", "--r", "1", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiment_single_trial_and_files() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("t.csv");
    let summary = dir.path().join("s.json");
    let out = run(&[
        "experiment", "--gen", "cycle:n=12", "--r", "1", "--d", "1", "--trials", "1", "--seed", "5",
        "--csv", s(&csv), "--summary", s(&summary),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "trial_index,seed,n,delta_max,r,d,q_used,code_size,n_bad,valid,gamma_bound");
    assert_eq!(std::fs::read(&summary).unwrap(), out.stdout);

    let out = run(&[
        "experiment", "--gen", "complete:n=6", "--r", "1", "--d", "1", "--trials", "3", "--seed", "5",
        "--csv", s(&csv),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn inputs_are_not_modified() {
    let dir = TempDir::new().unwrap();
    let text = "# keep me\n5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
    let g = write(dir.path(), "c5.txt", text);
    run(&["construct", "--graph", s(&g), "--r", "1", "--d", "1", "--seed", "1"]);
    run(&["verify", "--graph", s(&g), "--code", "0,1", "--r", "1"]);
    run(&["exact", "--graph", s(&g), "--r", "1"]);
    assert_eq!(std::fs::read_to_string(&g).unwrap(), text);
}
