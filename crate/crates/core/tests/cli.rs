mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use common::*;
use unimorph::characterize::{Trace, TraceKind, TraceMeta};
use unimorph::explorer::DesignPoint;
use unimorph::io::{
    write_trace, CharacterizeReport, ModelReport, ParetoReport, ResonanceReport, CYCLES_CSV_HEADER,
    SWEEP_CSV_HEADER,
};

const REFERENCE: &str = include_str!("../fixtures/reference.toml");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn unimorph(args: &[&str], dir: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_unimorph"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn project(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("project.toml");
    fs::write(&p, text).unwrap();
    p
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn model_value(csv: &str, quantity: &str) -> f64 {
    csv.lines()
        .find_map(|l| {
            let mut f = l.split(',');
            (f.next() == Some(quantity)).then(|| f.next().unwrap().parse().unwrap())
        })
        .unwrap()
}

#[test]
fn model_writes_reference_values() {
    let dir = tempfile::tempdir().unwrap();
    project(dir.path(), REFERENCE);
    let r = unimorph(&["--config", "project.toml", "model"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("feasible: yes"));
    let csv = fs::read_to_string(dir.path().join("out/model.csv")).unwrap();
    assert!(csv.starts_with("quantity,value,unit,display_value,display_unit\n"));
    assert!(rel_err(model_value(&csv, "neutral_axis"), 41.0588e-6) < 1e-5);
    assert!(rel_err(model_value(&csv, "blocked_force"), -2.5809e-3) < 1e-4);
    assert!(rel_err(model_value(&csv, "free_deflection"), -0.9772e-3) < 1e-4);
    assert!(rel_err(model_value(&csv, "resonant_deflection"), 12.0 * -0.9772e-3) < 1e-4);
}

#[test]
fn model_at_zero_volts() {
    let dir = tempfile::tempdir().unwrap();
    project(
        dir.path(),
        &REFERENCE.replace("voltage = 300.0\nquality", "voltage = 0.0\nquality"),
    );
    let r = unimorph(
        &["--config", "project.toml", "--format", "json", "model"],
        dir.path(),
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: ModelReport =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/model.json")).unwrap())
            .unwrap();
    assert_eq!(report.metrics.blocked_force, 0.0);
    assert_eq!(report.metrics.free_deflection, 0.0);
    assert!(report.feasible);
}

#[test]
fn model_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    project(dir.path(), REFERENCE);
    let r = unimorph(
        &[
            "--config",
            "project.toml",
            "--format",
            "json",
            "--out",
            "o",
            "model",
        ],
        dir.path(),
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(dir.path().join("o/model.json")).unwrap();
    let report: ModelReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn model_without_config_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(unimorph(&["model"], dir.path()).code, 3);
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    project(dir.path(), REFERENCE);
    let a = unimorph(
        &["--config", "project.toml", "--out", "a", "sweep"],
        dir.path(),
    );
    let b = unimorph(
        &["--config", "project.toml", "--out", "b", "sweep"],
        dir.path(),
    );
    assert_eq!((a.code, b.code), (0, 0));
    let ca = fs::read(dir.path().join("a/sweep.csv")).unwrap();
    assert_eq!(ca, fs::read(dir.path().join("b/sweep.csv")).unwrap());
    let text = String::from_utf8(ca).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(SWEEP_CSV_HEADER));
    assert_eq!(lines.count(), 40);
}

#[test]
fn sweep_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    project(dir.path(), REFERENCE);
    let r = unimorph(
        &["--config", "project.toml", "--format", "json", "sweep"],
        dir.path(),
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(dir.path().join("out/sweep.json")).unwrap();
    let points: Vec<DesignPoint> = serde_json::from_str(&text).unwrap();
    assert_eq!(points.len(), 40);
    assert_eq!(serde_json::to_string_pretty(&points).unwrap() + "\n", text);
}

#[test]
fn pareto_writes_front_and_ranking() {
    let dir = tempfile::tempdir().unwrap();
    project(dir.path(), REFERENCE);
    let r = unimorph(&["--config", "project.toml", "pareto"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(dir.path().join("out/pareto.json")).unwrap();
    let report: ParetoReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
    assert_eq!(report.total_points, 40);
    assert!(!report.front.is_empty());
    assert!(report.front.iter().all(|p| p.pareto && p.feasible));
    assert_eq!(report.ranking[0].params.layer_thickness, 5e-6);
    let front_csv = fs::read_to_string(dir.path().join("out/front.csv")).unwrap();
    assert_eq!(front_csv.lines().count(), report.front.len() + 1);
}

#[test]
fn pareto_with_nothing_feasible_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    project(
        dir.path(),
        &REFERENCE.replace("voltage = [300.0]", "voltage = [5000.0]"),
    );
    let r = unimorph(&["--config", "project.toml", "pareto"], dir.path());
    assert_eq!(r.code, 5, "{}", r.stderr);
    assert!(r.stderr.contains("front is empty"));
    assert!(dir.path().join("out/sweep.csv").exists());
}

fn sine_file(dir: &Path, name: &str, cycles: usize, load: f64) -> PathBuf {
    let tr = sine_trace(1e-3, 100.0, 1000, cycles, load, 15e-6, 0.0);
    write(dir, name, &write_trace(&tr))
}

#[test]
fn characterize_reports_power_density() {
    let dir = tempfile::tempdir().unwrap();
    sine_file(dir.path(), "trace.csv", 10, 100e-6);
    let r = unimorph(&["--out", "o", "characterize", "trace.csv"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(dir.path().join("o/characterize.json")).unwrap();
    let report: CharacterizeReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
    assert!(rel_err(report.metrics.mean.power_density, 13.0755) < 0.01);
    let cycles = fs::read_to_string(dir.path().join("o/cycles.csv")).unwrap();
    assert_eq!(cycles.lines().next(), Some(CYCLES_CSV_HEADER));
    assert_eq!(cycles.lines().count(), report.metrics.cycles.len() + 1);
}

#[test]
fn characterize_mass_override() {
    let dir = tempfile::tempdir().unwrap();
    sine_file(dir.path(), "trace.csv", 10, 100e-6);
    let r = unimorph(
        &["characterize", "trace.csv", "--load-mass", "0"],
        dir.path(),
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: CharacterizeReport =
        serde_json::from_str(&fs::read_to_string(dir.path().join("characterize.json")).unwrap())
            .unwrap();
    assert_eq!(report.meta.load_mass, 0.0);
    assert!(report.metrics.cycles.iter().all(|c| c.work_positive == 0.0));
}

#[test]
fn characterize_short_trace_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    sine_file(dir.path(), "short.csv", 1, 100e-6);
    let r = unimorph(&["characterize", "short.csv"], dir.path());
    assert_eq!(r.code, 4, "{}", r.stderr);
    assert!(r.stderr.contains("cycles"), "{}", r.stderr);
}

#[test]
fn malformed_row_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_trace(&sine_trace(1e-3, 100.0, 50, 4, 100e-6, 15e-6, 0.0));
    let mut lines: Vec<&str> = good.lines().collect();
    let header = lines.iter().position(|l| l.starts_with("t_s")).unwrap();
    lines[header + 3] = "0.0006,not-a-number";
    write(dir.path(), "bad.csv", &(lines.join("\n") + "\n"));
    let r = unimorph(&["characterize", "bad.csv"], dir.path());
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(
        r.stderr.contains(&format!("bad.csv:{}:", header + 4)),
        "{}",
        r.stderr
    );
}

#[test]
fn missing_trace_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(unimorph(&["characterize", "nope.csv"], dir.path()).code, 1);
}

#[test]
fn bad_flag_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(unimorph(&["model", "--bogus"], dir.path()).code, 2);
}

#[test]
fn config_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    project(dir.path(), "[drive]\nvoltage = 300.0\nvoltag = 1\n");
    let r = unimorph(&["--config", "project.toml", "model"], dir.path());
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("project.toml:3:"), "{}", r.stderr);

    project(
        dir.path(),
        &REFERENCE.replace(
            "material = \"polyimide\", thickness = 50e-6",
            "material = \"unobtainium\", thickness = 50e-6",
        ),
    );
    let r = unimorph(&["--config", "project.toml", "model"], dir.path());
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("unobtainium"), "{}", r.stderr);
}

fn chirp_file(dir: &Path, f0: f64, q: f64) -> PathBuf {
    let tr = chirp_trace(f0, q, 50.0, 500.0, 30.0, 4_000.0);
    write(dir, "chirp.csv", &write_trace(&tr))
}

#[test]
fn resonance_recovers_q() {
    let dir = tempfile::tempdir().unwrap();
    chirp_file(dir.path(), 200.0, 12.0);
    let r = unimorph(&["resonance", "chirp.csv", "--bins", "900"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(dir.path().join("resonance.json")).unwrap();
    let report: ResonanceReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
    assert!(rel_err(report.resonance_frequency, 200.0) < 0.02);
    assert!(rel_err(report.quality_factor.unwrap(), 12.0) < 0.05);
    assert!(!report.boundary_limited);
    let frf = fs::read_to_string(dir.path().join("frf.csv")).unwrap();
    assert_eq!(frf.lines().count(), 901);
}

#[test]
fn resonance_of_flat_response_has_no_q() {
    let dir = tempfile::tempdir().unwrap();
    let t: Vec<f64> = (0..40_001).map(|i| i as f64 / 4000.0).collect();
    let x: Vec<f64> = t
        .iter()
        .map(|&t| 1e-4 * (2.0 * std::f64::consts::PI * (50.0 * t + 0.5 * 45.0 * t * t)).sin())
        .collect();
    let meta = TraceMeta {
        kind: TraceKind::Chirp,
        f_lo: Some(50.0),
        f_hi: Some(500.0),
        ..TraceMeta::default()
    };
    write(
        dir.path(),
        "flat.csv",
        &write_trace(&Trace::new(t, x, meta).unwrap()),
    );
    let r = unimorph(&["resonance", "flat.csv", "--bins", "100"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: ResonanceReport =
        serde_json::from_str(&fs::read_to_string(dir.path().join("resonance.json")).unwrap())
            .unwrap();
    assert!(report.quality_factor.is_none());
    assert!(report.q_unavailable.is_some());
    assert!(r.stdout.to_lowercase().contains("q"), "{}", r.stdout);
}

#[test]
fn materials_list_includes_builtins_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let r = unimorph(&["materials", "list"], dir.path());
    assert_eq!(r.code, 0);
    for name in ["pvdf", "kapton", "adhesive"] {
        assert!(r.stdout.contains(name), "{}", r.stdout);
    }
    project(dir.path(), REFERENCE);
    let r = unimorph(
        &["--config", "project.toml", "materials", "list"],
        dir.path(),
    );
    assert!(r.stdout.contains("polyimide"));
}
