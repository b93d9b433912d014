use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn cavimode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cavimode")).args(args).output().expect("binary runs")
}

fn small_config(dir: &Path) -> String {
    let path = dir.join("run.cfg");
    let out = cavimode(&["preset", "fig2b", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap().replace("sweep_a_points = 201", "sweep_a_points = 11");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn scan_writes_csv_and_summary() {
    let dir = tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out = dir.path().join("out.csv");
    let run = cavimode(&["scan", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "a,q_m,Q_m,Rm,dk_exact,dk_zeroth,dk_first,Tc_max,converged");
    assert_eq!(lines.count(), 33);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["kind"], "shift-1d");
}

#[test]
fn scan_output_is_reproducible() {
    let dir = tempdir().unwrap();
    let cfg = small_config(dir.path());
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(cavimode(&["--threads", "1", "scan", "--config", &cfg, "--out", a.to_str().unwrap()]).status.success());
    assert!(cavimode(&["--threads", "4", "scan", "--config", &cfg, "--out", b.to_str().unwrap()]).status.success());
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn method_selection_leaves_other_columns_empty() {
    let dir = tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out = dir.path().join("m.csv");
    let run = cavimode(&["scan", "--config", &cfg, "--method", "exact,zeroth", "--out", out.to_str().unwrap()]);
    assert!(run.status.success());
    let csv = fs::read_to_string(out).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_ne!(row[4], "NaN");
    assert_ne!(row[5], "NaN");
    assert_eq!(row[6], "NaN");
}

#[test]
fn json_format() {
    let dir = tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out = dir.path().join("out.json");
    let run = cavimode(&["scan", "--config", &cfg, "--format", "json", "--out", out.to_str().unwrap()]);
    assert!(run.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert!(v.is_object());
}

#[test]
fn overrides_apply() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("o.csv");
    let run = cavimode(&[
        "scan", "--preset", "fig2b", "--set", "sweep_a_points=3", "--set", "sweep_membrane_reflectivities=[0.3]",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(fs::read_to_string(out).unwrap().lines().count(), 4);
}

#[test]
fn invalid_config_exits_2() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "kind = \"shift-1d\"\nmirror_reflectivity = 1.5\n").unwrap();
    let out = dir.path().join("x.csv");
    let run = cavimode(&["scan", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    let run = cavimode(&["scan", "--preset", "no-such-preset", "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn io_errors_exit_3() {
    let dir = tempdir().unwrap();
    let missing = dir.path().join("missing.cfg");
    let out = dir.path().join("x.csv");
    let run = cavimode(&["scan", "--config", missing.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(3));
    let unwritable = dir.path().join("no-dir").join("x.csv");
    let run = cavimode(&["scan", "--preset", "fig2b", "--set", "sweep_a_points=2", "--out", unwritable.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(3));
}

#[test]
fn strong_coupling_report_prints_figures() {
    let run = cavimode(&["report", "strong-coupling", "--preset", "strong-coupling-report"]);
    assert!(run.status.success());
    let text = String::from_utf8(run.stdout).unwrap();
    for label in ["g_q ", "g_q_max ", "F_cav ", "kappa ", "g/kappa ", "C0 "] {
        assert!(text.lines().any(|l| l.starts_with(label)), "missing {label}\n{text}");
    }
    let json = cavimode(&["report", "strong-coupling", "--preset", "strong-coupling-report", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert!(v["cooperativity"].as_f64().unwrap() > 1e5);
}

#[test]
fn preset_dump_round_trips() {
    let dir = tempdir().unwrap();
    for name in ["fig2a", "fig2c", "fig3b", "fig4", "strong-coupling-report"] {
        let path = dir.path().join(format!("{name}.cfg"));
        assert!(cavimode(&["preset", name, "--out", path.to_str().unwrap()]).status.success());
        let text = fs::read_to_string(&path).unwrap();
        let request = cavimode::config::parse_config(&text, &[]).unwrap();
        assert_eq!(request, cavimode::config::preset(name).unwrap());
    }
}
