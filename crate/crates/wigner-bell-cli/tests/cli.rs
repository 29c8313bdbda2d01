//! End-to-end checks of the binary: exit codes, output schema, and
//! rerun determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wigner-bell"))
}

fn write_config(dir: &Path, name: &str, json: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn point_at_zero_angle_reports_tsirelson_value() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(
        tmp.path(),
        "point.json",
        r#"{
            "scenario": { "momentum_setting": "two-opposite" },
            "sweep": { "omega_min": 0.0, "omega_max": 0.0, "steps": 1 },
            "optimizer": { "multistarts": 8 }
        }"#,
    );
    let out_dir = tmp.path().join("out");
    let output = run(&[
        "point",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    let value: f64 = stdout
        .split("bell_value=")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 2.0f64.sqrt()).abs() < 1e-6, "value {value}");
    assert!(out_dir.join("point.csv").is_file());
}

#[test]
fn sweep_writes_csv_schema_and_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(
        tmp.path(),
        "sweep.json",
        r#"{
            "scenario": { "momentum_setting": "two-opposite", "theta_s": 0.19634954084936207 },
            "sweep": { "omega_min": 0.0, "omega_max": 1.2, "steps": 3 },
            "optimizer": { "multistarts": 4 }
        }"#,
    );
    let out1 = tmp.path().join("a");
    let out2 = tmp.path().join("b");
    for out in [&out1, &out2] {
        let output = run(&[
            "sweep",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success(), "{output:?}");
    }
    let csv1 = fs::read_to_string(out1.join("sweep.csv")).unwrap();
    let csv2 = fs::read_to_string(out2.join("sweep.csv")).unwrap();
    assert_eq!(csv1, csv2, "same seed must give byte-identical output");

    let lines: Vec<&str> = csv1.lines().collect();
    assert_eq!(lines[0], "omega_rad,bell_value,converged");
    assert_eq!(lines.len(), 4); // header + steps
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        let value: f64 = fields[1].parse().unwrap();
        assert!(value.is_finite() && value >= 0.0);
        assert!(fields[2] == "true" || fields[2] == "false");
    }

    // seed override is accepted and still deterministic
    let out3 = tmp.path().join("c");
    let output = run(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out3.to_str().unwrap(),
        "--seed",
        "99",
        "--format",
        "json",
    ]);
    assert!(output.status.success(), "{output:?}");
    let rows: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out3.join("sweep.json")).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
}

#[test]
fn invalid_config_exits_2_and_names_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "bad.json", r#"{ "sweep": { "steps": 0 } }"#);
    let output = run(&["sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("sweep.steps"), "stderr: {stderr}");
}

#[test]
fn missing_config_file_exits_3() {
    let output = run(&["sweep", "--config", "/nonexistent/nowhere.json"]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn unknown_preset_exits_2_and_lists_presets() {
    let output = run(&["figures", "fig9"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    for preset in ["fig1", "fig2", "fig3", "fig4"] {
        assert!(stderr.contains(preset), "stderr: {stderr}");
    }
}

#[test]
fn figures_fig1_writes_four_curves_and_svg() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("figs");
    let output = run(&["figures", "fig1", "--out", out.to_str().unwrap(), "--svg"]);
    assert!(output.status.success(), "{output:?}");
    let dir = out.join("fig1");
    let mut csvs: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    csvs.sort();
    assert_eq!(csvs.len(), 4, "{csvs:?}");
    assert!(csvs.iter().all(|f| f.ends_with(".csv")));
    assert!(csvs.iter().any(|f| f.starts_with("two-opposite_")));
    assert!(csvs.iter().any(|f| f.starts_with("two-same_")));
    let svg = fs::read_to_string(out.join("fig1.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("classical bound"));
}
