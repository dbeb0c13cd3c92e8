use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_maxrigidity"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(experiment: &str, config: &Path, out: &Path, extra: &[&str]) -> std::process::Output {
    bin()
        .arg(experiment)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
}

#[test]
fn fixed_points_json_has_ten_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "fp.json",
        r#"{"schema_version": 1, "params": {"m_max": 10, "residual_tol": 1e-12},
            "output": {"json": "fp.json", "csv": "fp.csv"}}"#,
    );
    let out = run("fixed-points", &cfg, &dir.path().join("out"), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&std::fs::read(dir.path().join("out/fp.json")).unwrap()).unwrap();
    let rows = doc["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(doc["experiment"], "fixed-points");
    assert_eq!(doc["schema_version"], 1);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r["m"].as_u64(), Some(i as u64 + 1));
        assert!(r["residual"].as_f64().unwrap() <= 1e-12);
    }
    let g1 = rows[0]["gamma"].as_f64().unwrap();
    assert!((g1 - 4.493409457909064).abs() < 1e-14);
    let csv = std::fs::read_to_string(dir.path().join("out/fp.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn two_valued_summary_for_shifted_sine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "tv.json",
        r#"{"schema_version": 1, "experiment": "two-valued",
            "function": {"kind": "sine", "a": 0.0, "b": 1.0, "c": 1.0, "d": 0.0}}"#,
    );
    let out = run("two-valued", &cfg, dir.path(), &[]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("two_valued=true, values={0, 4.4934±"), "{stdout}");
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.json", r#"{"schema_version": 1, "params": {"m_maks": 3}}"#);
    let out = run("fixed-points", &bad, dir.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m_maks"));

    let missing = run("fixed-points", &dir.path().join("nope.json"), dir.path(), &[]);
    assert_eq!(missing.status.code(), Some(2));

    let unknown = run("frobnicate", &bad, dir.path(), &[]);
    assert_eq!(unknown.status.code(), Some(2));

    let mismatch = write_config(dir.path(), "mm.json", r#"{"schema_version": 1, "experiment": "cheng"}"#);
    assert_eq!(run("fixed-points", &mismatch, dir.path(), &[]).status.code(), Some(2));
}

#[test]
fn threshold_violation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "fp.json", r#"{"schema_version": 1, "params": {"residual_tol": 0.0}}"#);
    assert_eq!(run("fixed-points", &cfg, dir.path(), &[]).status.code(), Some(1));
}

#[test]
fn seeded_runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "lat.json",
        r#"{"schema_version": 1, "seed": 5, "params": {"corpus_size": 12},
            "output": {"json": "l.json", "csv": "l.csv", "svg": "l.svg"}}"#,
    );
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let c = dir.path().join("c");
    assert_eq!(run("lattice", &cfg, &a, &[]).status.code(), Some(0));
    assert_eq!(run("lattice", &cfg, &b, &[]).status.code(), Some(0));
    assert_eq!(run("lattice", &cfg, &c, &["--seed", "6"]).status.code(), Some(0));
    for f in ["l.json", "l.csv", "l.svg"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    assert_ne!(std::fs::read(a.join("l.csv")).unwrap(), std::fs::read(c.join("l.csv")).unwrap());
    let doc: Value = serde_json::from_slice(&std::fs::read(c.join("l.json")).unwrap()).unwrap();
    assert_eq!(doc["seed"], 6);
}

#[test]
fn only_declared_outputs_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "fp.json", r#"{"schema_version": 1, "output": {"svg": "fig/fp.svg"}}"#);
    let out = dir.path().join("out");
    assert_eq!(run("fixed-points", &cfg, &out, &[]).status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(entries, vec![std::ffi::OsString::from("fig")]);
    assert!(std::fs::read_to_string(out.join("fig/fp.svg")).unwrap().starts_with("<svg"));
}
