use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn boxdim(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxdim"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("spawn boxdim")
}

fn ok_json(out: &Path, args: &[&str]) -> Value {
    let o = boxdim(out, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn code(out: &Path, args: &[&str]) -> i32 {
    boxdim(out, args).status.code().expect("exit code")
}

#[test]
fn oracle_examples() {
    let d = tempfile::tempdir().unwrap();
    let v = ok_json(d.path(), &["oracle", "focus_dim", "--k", "3"]);
    assert!((v["value"].as_f64().unwrap() - 12.0 / 7.0).abs() < 1e-12);
    assert_eq!(v["schema_version"], 1);
    let v = ok_json(d.path(), &["oracle", "limit_cycle_dim", "--m", "5"]);
    assert!((v["value"].as_f64().unwrap() - 1.8).abs() < 1e-12);
    let v = ok_json(d.path(), &["oracle", "sphere_transforms", "--alpha", "0.25"]);
    assert!((v["value"]["gamma2"].as_f64().unwrap() - 1.8).abs() < 1e-12);
    assert!((v["value"]["gamma3"].as_f64().unwrap() - 5.0 / 3.0).abs() < 1e-12);
    assert!(d.path().join("oracle.json").exists());
}

#[test]
fn usage_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    assert_eq!(code(p, &["oracle", "no_such_formula"]), 2);
    assert_eq!(code(p, &["oracle", "focus_dim"]), 2);
    assert_eq!(code(p, &["oracle", "focus_dim", "--k", "-1"]), 2);
    assert_eq!(code(p, &[]), 2);
    assert_eq!(code(p, &["--paper-case", "fig1", "oracle", "--list"]), 2);
    assert_eq!(code(p, &["dim", "--system", "{\"kind\":\"warp_drive\"}"]), 2);
    assert_eq!(code(p, &["--eps-min", "-1", "oracle", "--list"]), 2);
    assert_eq!(code(p, &["sweep", "--family", "hopf-inverted", "--grid", "0,0.1,0.05"]), 2);
    assert_eq!(code(p, &["spiral", "--alpha", "0.25", "--disc"]), 2);
    assert_eq!(code(p, &["--help"]), 0);
}

#[test]
fn under_sampled_curve_exits_3() {
    let d = tempfile::tempdir().unwrap();
    let csv = d.path().join("sq.csv");
    std::fs::write(&csv, "x,y\n0,0\n1,0\n1,1\n0,1\n0.5,0.2\n").unwrap();
    let o = boxdim(d.path(), &["--eps-min", "0.01", "dim", "--curve", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resample"));
}

#[test]
fn empty_grid_gives_empty_report() {
    let d = tempfile::tempdir().unwrap();
    let v = ok_json(d.path(), &["sweep", "--family", "hopf-inverted", "--grid="]);
    assert_eq!(v["report"]["points"].as_array().unwrap().len(), 0);
    let csv = std::fs::read_to_string(d.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
}

#[test]
fn spiral_outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["spiral", "--alpha", "0.25", "--phi-max", "500", "--invert"];
    let va = ok_json(a.path(), &args);
    let vb = ok_json(b.path(), &args);
    assert_eq!(va, vb);
    assert_eq!(va["files"].as_array().unwrap().len(), 2);
    for f in ["spiral.csv", "spiral_inverted.csv", "spiral.meta.json", "spiral.json"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f} differs");
    }
    let inv = std::fs::read_to_string(a.path().join("spiral_inverted.csv")).unwrap();
    assert!(inv.starts_with("coord_system,polar2\nr,phi\n"));
}

#[test]
fn sphere_projections() {
    let d = tempfile::tempdir().unwrap();
    ok_json(d.path(), &["spiral", "--alpha", "0.25", "--phi-max", "200", "--poincare", "1", "--riemann", "0.5"]);
    for f in ["spiral_poincare.csv", "spiral_riemann.csv"] {
        let text = std::fs::read_to_string(d.path().join(f)).unwrap();
        assert!(text.starts_with("coord_system,cartesian3\nx,y,z\n"), "{f}");
        let row: Vec<f64> = text.lines().nth(2).unwrap().split(',').map(|t| t.parse().unwrap()).collect();
        assert_eq!(row.len(), 3);
    }
    // points on the Poincare sphere of radius 1
    let text = std::fs::read_to_string(d.path().join("spiral_poincare.csv")).unwrap();
    for line in text.lines().skip(2).step_by(97) {
        let v: Vec<f64> = line.split(',').map(|t| t.parse().unwrap()).collect();
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        assert!((n - 1.0).abs() < 1e-12);
    }
}

#[test]
fn config_precedence() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("cfg.json");
    let from_cfg = d.path().join("from_cfg");
    std::fs::write(&cfg, format!("{{\"out\": {:?}, \"scales\": 3}}", from_cfg.to_str().unwrap())).unwrap();
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_boxdim")).args(args).output().unwrap();
    // the config's scales value is below the minimum and is rejected
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "oracle", "--list"]).status.code(), Some(2));
    // a flag overrides it
    let o = run(&["--config", cfg.to_str().unwrap(), "--scales", "8", "oracle", "--list"]);
    assert!(o.status.success());
    assert!(from_cfg.join("oracle.json").exists());
    let flag_out = d.path().join("flag_out");
    let o = run(&["--config", cfg.to_str().unwrap(), "--scales", "8", "--out", flag_out.to_str().unwrap(), "oracle", "--list"]);
    assert!(o.status.success());
    assert!(flag_out.join("oracle.json").exists());
    std::fs::write(&cfg, "{\"colour\": 1}").unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "oracle", "--list"]).status.code(), Some(2));
}

#[test]
fn string_power_sequence() {
    let d = tempfile::tempdir().unwrap();
    let v = ok_json(d.path(), &["string", "--alpha", "2", "--n", "20000", "--geometric"]);
    assert!((v["dimension"].as_f64().unwrap() - 1.0 / 3.0).abs() < 0.05);
    assert!((v["point_set"]["dimension"].as_f64().unwrap() - 1.0 / 3.0).abs() < 0.05);
    assert_eq!(v["monotone"]["monotone"], true);
    assert!(v["gap_sum"].as_f64().unwrap() <= v["gap_sum_bound"].as_f64().unwrap());
}

#[test]
fn curve_round_trip_dimension() {
    let d = tempfile::tempdir().unwrap();
    ok_json(d.path(), &["spiral", "--alpha", "0.5", "--name", "s"]);
    let curve = d.path().join("s.csv");
    let v = ok_json(d.path(), &["dim", "--curve", curve.to_str().unwrap(), "--oracle", "1.3333333333333333"]);
    assert!(v["gap"].as_f64().unwrap() < 0.05, "{v}");
    assert_eq!(v["input"]["unbounded"], false);
}

#[test]
fn integrate_writes_trajectory() {
    let d = tempfile::tempdir().unwrap();
    let v = ok_json(
        d.path(),
        &["integrate", "--system", "{\"kind\":\"hopf\",\"k\":1,\"a\":-0.1}", "--revolutions", "5", "--rho0", "0.5"],
    );
    assert_eq!(v["angle_monotone"], true);
    assert!(d.path().join("trajectory.csv").exists());
    assert!(d.path().join("trajectory.meta.json").exists());
}

#[test]
fn hopf_sweep_regimes() {
    let d = tempfile::tempdir().unwrap();
    let v = ok_json(d.path(), &["sweep", "--family", "hopf-inverted", "--grid=-0.04,0,0.04"]);
    let pts = v["report"]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 3);
    let csv = std::fs::read_to_string(d.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!((pts[1]["dimension"].as_f64().unwrap() - 4.0 / 3.0).abs() <= 0.07);
    // the arc at infinity; the slow cycle at a = -0.04 is checked by the acceptance suite
    for p in [&pts[0], &pts[2]] {
        let focus = p["arcs"].as_array().unwrap().iter().find(|a| a["target"]["kind"] == "focus").unwrap();
        assert!((focus["dimension"].as_f64().unwrap() - 1.0).abs() <= 0.07, "{p}");
    }
    assert_eq!(pts[2]["regime"], "exponential");
}
