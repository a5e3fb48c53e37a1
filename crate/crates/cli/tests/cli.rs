//! End-to-end CLI checks: exit codes, report determinism, artifacts, and
//! the wavefunction transform path.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn galdual() -> Command {
    Command::new(env!("CARGO_BIN_EXE_galdual"))
}

fn run(args: &[&str]) -> Output {
    galdual().args(args).output().expect("binary runs")
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

#[test]
fn list_exits_zero_and_names_scenarios() {
    let out = run(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("groups-axioms"));
    assert!(text.contains("em-covariance"));
    // at least 8 bundled scenarios
    assert!(text.lines().count() >= 9);

    let filtered = run(&["list", "--module", "contraction"]);
    let text = String::from_utf8_lossy(&filtered.stdout);
    assert!(text.contains("contract-temporal"));
    assert!(!text.contains("groups-axioms"));

    let empty = run(&["list", "--module", "no-such-module"]);
    assert!(empty.status.success());
}

#[test]
fn malformed_json_exits_two_without_report() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    write(&bad, "{ not json");
    let out_dir = dir.path().join("out");
    let out = run(&["run", bad.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_dir.join("bad-report.json").exists());
}

#[test]
fn unknown_module_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("scenario.json");
    write(
        &f,
        r#"{"schema": 1, "name": "x", "description": "d", "module": "nope", "params": {}}"#,
    );
    let out = run(&["run", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_param_field_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("scenario.json");
    write(
        &f,
        r#"{"schema": 1, "name": "x", "description": "d", "module": "groups", "params": {"trials": 10, "bogus": 1}}"#,
    );
    let out = run(&["run", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_exits_three() {
    let out = run(&["run", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_deterministic_for_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("groups.json");
    write(
        &f,
        r#"{"schema": 1, "name": "det", "description": "d", "seed": 42, "module": "groups", "params": {"trials": 50}}"#,
    );
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    assert!(run(&["run", f.to_str().unwrap(), "--out", out1.to_str().unwrap()]).status.success());
    assert!(run(&["run", f.to_str().unwrap(), "--out", out2.to_str().unwrap()]).status.success());
    let r1 = fs::read_to_string(out1.join("det-report.json")).unwrap();
    let r2 = fs::read_to_string(out2.join("det-report.json")).unwrap();
    assert_eq!(r1, r2, "reports must be bitwise identical for a fixed seed");

    // a different seed changes measured values but not the schema
    let f2 = dir.path().join("groups2.json");
    write(
        &f2,
        r#"{"schema": 1, "name": "det", "description": "d", "seed": 43, "module": "groups", "params": {"trials": 50}}"#,
    );
    let out3 = dir.path().join("c");
    assert!(run(&["run", f2.to_str().unwrap(), "--out", out3.to_str().unwrap()]).status.success());
    let r3 = fs::read_to_string(out3.join("det-report.json")).unwrap();
    assert_ne!(r1, r3);
}

#[test]
fn contract_emits_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "contract",
        "--scenario",
        "bundled:contract-temporal",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("contract-temporal.csv")).unwrap();
    assert!(csv.starts_with("alpha,distance\n"));
    assert!(csv.lines().count() >= 9);
    let summary = fs::read_to_string(dir.path().join("contract-temporal-summary.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&summary).unwrap();
    assert!(doc["rate"].as_f64().unwrap() < -1.9);
    assert!(doc["limit_matrix"].is_array());
}

#[test]
fn failing_check_exits_one() {
    // an absurd covariance bound cannot pass
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("cov.json");
    write(
        &f,
        r#"{"schema": 1, "name": "cov-fail", "description": "d", "seed": 5, "module": "em-covariance",
            "params": {"grid": 16, "frames": 2, "inflation_bound": 1e-30, "scheme": "fd4"}}"#,
    );
    let out = run(&["run", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parallel_jobs_match_sequential() {
    let dir = tempfile::tempdir().unwrap();
    let mk = |name: &str, seed: u64| {
        let f = dir.path().join(format!("{name}.json"));
        write(
            &f,
            &format!(
                r#"{{"schema": 1, "name": "{name}", "description": "d", "seed": {seed}, "module": "groups", "params": {{"trials": 30}}}}"#
            ),
        );
        f
    };
    let f1 = mk("s1", 1);
    let f2 = mk("s2", 2);
    let seq_dir = dir.path().join("seq");
    let par_dir = dir.path().join("par");
    assert!(run(&[
        "run",
        f1.to_str().unwrap(),
        f2.to_str().unwrap(),
        "--out",
        seq_dir.to_str().unwrap()
    ])
    .status
    .success());
    assert!(run(&[
        "run",
        f1.to_str().unwrap(),
        f2.to_str().unwrap(),
        "--jobs",
        "2",
        "--out",
        par_dir.to_str().unwrap()
    ])
    .status
    .success());
    for name in ["s1", "s2"] {
        let a = fs::read_to_string(seq_dir.join(format!("{name}-report.json"))).unwrap();
        let b = fs::read_to_string(par_dir.join(format!("{name}-report.json"))).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn rep_transform_round_trip() {
    use galdual::container;
    use galdual::grid::Grid3;
    use galdual::linalg::Vec3;
    use galdual::reps::{RepTag, WaveFunction};

    let dir = tempfile::tempdir().unwrap();
    let wf = WaveFunction::gaussian_position(
        Grid3::cubic(16, 0.5),
        RepTag::Dual(3.0),
        Vec3::zero(),
        0.8,
        Vec3::new(0.3, 0.0, 0.0),
    );
    let input = dir.path().join("wf.gdc");
    let mut file = fs::File::create(&input).unwrap();
    container::write_wavefunction(&mut file, &wf).unwrap();
    drop(file);

    let element = dir.path().join("element.json");
    write(
        &element,
        r#"{"flavor": "dual-galilei", "b": 0.25, "a": [0.5, 0.0, -0.5], "v": [0.1, 0.0, 0.0], "theta": [0.0, 0.0, 0.0], "c": 1.0}"#,
    );
    let output = dir.path().join("out.gdc");
    let out = run(&[
        "rep-transform",
        "--input",
        input.to_str().unwrap(),
        "--element",
        element.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut file = fs::File::open(&output).unwrap();
    let transformed = container::read_wavefunction(&mut file).unwrap();
    assert!((transformed.norm() - wf.norm()).abs() < 1e-10);
    // a flavor-mismatched element is an input error
    write(
        &element,
        r#"{"flavor": "galilei", "b": 0.0, "a": [0,0,0], "v": [0,0,0], "theta": [0,0,0], "c": 1.0}"#,
    );
    let out = run(&[
        "rep-transform",
        "--input",
        input.to_str().unwrap(),
        "--element",
        element.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
