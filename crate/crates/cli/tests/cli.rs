use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcsynth")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn synth_to(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name);
    let path = path.to_str().unwrap().to_string();
    let mut all = vec!["synth"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", &path]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn synth_mcx_declares_all_wires() {
    let dir = TempDir::new().unwrap();
    let path = synth_to(&dir, "out.qasm", &["mcx", "--n", "8", "--ancilla", "clean"]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("qubit[10] q;"));
    assert_eq!(text.lines().filter(|l| l.starts_with("// role")).count(), 10);
}

#[test]
fn dirty_ancilla_rejects_non_involution() {
    let out = run(&["synth", "mcu", "--n", "6", "--ancilla", "dirty", "--u", "phase:1/3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("U² = I"));
}

#[test]
fn incrementor_file_verifies_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = synth_to(&dir, "inc.qasm", &["incr", "--n", "16", "--split", "9/10"]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(mcsynth::qasm::to_qasm(&mcsynth::qasm::from_qasm(&text).unwrap()), text);
    let out = run(&["verify", &path, "--target", "incr:16"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["verdict"]["equivalent"], true);
}

#[test]
fn verify_passes_then_catches_a_deleted_gate() {
    let dir = TempDir::new().unwrap();
    let path = synth_to(&dir, "mcx.qasm", &["mcx", "--n", "6"]);
    let out = run(&["verify", &path, "--target", "mcx:6", "--mode", "dense"]);
    assert_eq!(out.status.code(), Some(0));

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let first_gate =
        lines.iter().position(|l| !l.starts_with("//") && l.contains("q[") && !l.starts_with("qubit")).unwrap();
    lines.remove(first_gate);
    let broken = dir.path().join("broken.qasm");
    std::fs::write(&broken, lines.join("\n") + "\n").unwrap();
    let out = run(&["verify", path_str(&broken), "--target", "mcx:6", "--mode", "dense"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"]["equivalent"], false);
    assert!(v["verdict"]["mismatch"]["input"].is_string());
}

#[test]
fn classical_mode_rejects_hadamard() {
    let dir = TempDir::new().unwrap();
    let path = synth_to(&dir, "inc.qasm", &["incr", "--n", "4"]);
    let text = std::fs::read_to_string(&path).unwrap() + "h q[0];\n";
    std::fs::write(&path, text).unwrap();
    let out = run(&["verify", &path, "--target", "incr:4", "--mode", "classical"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_of_empty_circuit() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("empty.qasm");
    std::fs::write(&path, "OPENQASM 3.0;\n// level mcx\nqubit[1] q;\n// name q[0] = a\n// role q[0] = input\n")
        .unwrap();
    let v = json(&run(&["report", path_str(&path)]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["report"]["depth"], 0);
    assert_eq!(v["report"]["size"], 0);
    assert_eq!(v["audit"]["det_phase"], "0/1");
}

#[test]
fn report_precision_of_lowered_and_zero_ancilla_circuits() {
    let dir = TempDir::new().unwrap();
    let lowered = synth_to(&dir, "low.qasm", &["mcx", "--n", "8", "--lower"]);
    let v = json(&run(&["report", &lowered]));
    let q: u64 = v["audit"]["max_denominator"].as_str().unwrap().parse().unwrap();
    assert!(q <= 4);

    let zero = synth_to(&dir, "zero.qasm", &["mcx", "--n", "6", "--ancilla", "none"]);
    let v = json(&run(&["report", &zero, "--per-gate"]));
    assert_eq!(v["audit"]["det_phase"], "1/1");
    assert_eq!(v["report"]["ancilla_clean"], 0);
    assert!(v["audit"]["per_gate"].as_array().unwrap().len() > 1);
}

#[test]
fn scaling_tables() {
    let out = run(&["scaling", "mcx_clean", "--n-min", "8", "--n-max", "1024"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let depths: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["depth_mcx"].as_u64().unwrap()).collect();
    assert_eq!(depths.len(), 8);
    assert!(depths.windows(2).all(|w| w[0] <= w[1] && w[1] - w[0] <= 6));

    let v = json(&run(&["scaling", "incrementor", "--n-min", "16", "--n-max", "1024"]));
    assert!(v["fit"]["a"].as_f64().unwrap() > 0.0);
    assert!(v["fit"]["b"].is_number());

    assert_eq!(run(&["scaling", "incrementor", "--n-min", "64", "--n-max", "16"]).status.code(), Some(2));
}

#[test]
fn seeded_runs_are_reproducible_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let path = synth_to(&dir, "big.qasm", &["mcx", "--n", "200", "--ancilla", "dirty"]);
    let args = ["verify", path.as_str(), "--target", "mcx:200", "--seed", "42", "--samples", "300"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_mcsynth")).args(args).env("MCSYNTH_THREADS", "1").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["synth", "mcx"]).status.code(), Some(2));
    assert_eq!(run(&["synth", "mcx", "--n", "4", "--split", "3/2"]).status.code(), Some(2));
    assert_eq!(run(&["synth", "mcu", "--n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent.qasm", "--target", "mcx:3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent.qasm", "--target", "toffoli:3"]).status.code(), Some(2));
}
