//! End-to-end tests of the command-line interface, driving the built binary.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn beamspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beamspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.to_string()).collect())
        .collect()
}

#[test]
fn modes_aa_lists_pi_multiples() {
    let out = beamspec(&["modes", "--support", "aa", "--length", "1", "--count", "3"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.starts_with("n,kappa,eigenvalue,bv_residual,shape,c1,c2,c3,c4\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 3);
    for (i, row) in rows.iter().enumerate() {
        let kappa: f64 = row[1].parse().unwrap();
        let want = (i + 1) as f64 * std::f64::consts::PI;
        assert!((kappa - want).abs() < 1e-12 * want);
    }
    // Only '\n' line endings.
    assert!(!text.contains('\r'));
}

#[test]
fn modes_ab_first_root() {
    let out = beamspec(&["modes", "--support", "ab", "--count", "1"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout_str(&out));
    let kappa: f64 = rows[0][1].parse().unwrap();
    assert!((kappa - 3.926_602_312_047_919).abs() < 1e-8);
}

#[test]
fn modes_cc_starts_with_two_rigid_rows() {
    let out = beamspec(&["modes", "--support", "cc", "--count", "4"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout_str(&out));
    assert_eq!(rows[0][1], "0.0000000000000000e0");
    assert_eq!(rows[1][1], "0.0000000000000000e0");
    assert_eq!(rows[0][4], "polynomial");
    let kappa3: f64 = rows[2][1].parse().unwrap();
    assert!((kappa3 - 4.730_040_744_862_704).abs() < 1e-8);
}

#[test]
fn modes_with_sigma_adds_omega_column() {
    let out = beamspec(&["modes", "--support", "aa", "--count", "1", "--sigma", "2.0"]);
    let text = stdout_str(&out);
    assert!(text.starts_with("n,kappa,eigenvalue,omega,"));
    let rows = csv_rows(&text);
    let omega: f64 = rows[0][3].parse().unwrap();
    let want = 2.0 * std::f64::consts::PI.powi(2);
    assert!((omega - want).abs() < 1e-12 * want);
}

#[test]
fn modes_rejects_bad_input() {
    let out = beamspec(&["modes", "--support", "xy", "--count", "3"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown support"), "stderr: {err}");

    let out = beamspec(&["modes", "--support", "aa", "--count", "26"]);
    assert!(!out.status.success());
}

#[test]
fn modes_json_output() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("modes.json");
    let out = beamspec(&[
        "modes",
        "--support",
        "aa",
        "--count",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 2);
    assert_eq!(value[0]["n"], 1);
    assert_eq!(value[0]["shape"], "sine");
}

fn write_config(path: &Path, body: &str) {
    std::fs::write(path, body).unwrap();
}

const SINGLE_MODE_CONFIG: &str = r#"{
    "support": "aa",
    "length": 1.0,
    "material": {"sigma": 1.0},
    "n_modes": 4,
    "initial": {
        "u0": {"type": "mode", "n": 1},
        "v0": {"type": "zero"}
    },
    "time": {"t0": 0.0, "t1": 0.4, "frames": 5},
    "grid": {"points": 21}
}"#;

#[test]
fn evolve_single_mode_is_a_standing_cosine() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    write_config(&cfg, SINGLE_MODE_CONFIG);
    let frames = dir.path().join("frames.csv");
    let out = beamspec(&[
        "evolve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        frames.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let text = std::fs::read_to_string(&frames).unwrap();
    assert!(text.starts_with("t,x,u,v\n"));
    let pi = std::f64::consts::PI;
    for row in csv_rows(&text) {
        let t: f64 = row[0].parse().unwrap();
        let x: f64 = row[1].parse().unwrap();
        let u: f64 = row[2].parse().unwrap();
        let want = (pi * pi * t).cos() * 2.0f64.sqrt() * (pi * x).sin();
        assert!((u - want).abs() < 1e-8, "t={t}, x={x}: {u} vs {want}");
    }

    // Energy sidecar: constant within 1e-9 relative.
    let sidecar: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("frames.sidecar.json")).unwrap(),
    )
    .unwrap();
    let energies: Vec<f64> = sidecar["energy"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["energy"].as_f64().unwrap())
        .collect();
    assert_eq!(energies.len(), 5);
    for e in &energies {
        assert!(((e - energies[0]) / energies[0]).abs() < 1e-9);
    }
}

#[test]
fn evolve_output_is_byte_deterministic() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    write_config(&cfg, SINGLE_MODE_CONFIG);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let st = beamspec(&[
            "evolve",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(st.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn evolve_symmetric_pluck_stays_symmetric() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    write_config(
        &cfg,
        &SINGLE_MODE_CONFIG.replace(
            r#"{"type": "mode", "n": 1}"#,
            r#"{"type": "pluck", "position": 0.5, "height": 1.0}"#,
        ),
    );
    let frames = dir.path().join("frames.csv");
    let out = beamspec(&[
        "evolve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        frames.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&frames).unwrap();
    let rows = csv_rows(&text);
    // Grid has 21 points; row k and row 20-k within a frame mirror each other.
    for frame in rows.chunks(21) {
        for k in 0..21 {
            let u: f64 = frame[k][2].parse().unwrap();
            let mirrored: f64 = frame[20 - k][2].parse().unwrap();
            assert!((u - mirrored).abs() < 1e-9);
        }
    }
}

#[test]
fn evolve_reports_schema_errors_with_location() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    write_config(
        &cfg,
        &SINGLE_MODE_CONFIG.replace("\"points\": 21", "\"points\": \"lots\""),
    );
    let out = beamspec(&[
        "evolve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("x.csv").to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("grid"), "stderr: {err}");
    assert!(err.contains("line"), "stderr: {err}");
}

#[test]
fn compare_dispersion_row_matches_closed_forms() {
    let out = beamspec(&[
        "compare",
        "--wave-speed",
        "1",
        "--sigma",
        "1",
        "--count",
        "3",
    ]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout_str(&out));
    let pi = std::f64::consts::PI;
    let w1: f64 = rows[0][1].parse().unwrap();
    let c: f64 = rows[0][2].parse().unwrap();
    let wb: f64 = rows[0][3].parse().unwrap();
    let cb: f64 = rows[0][4].parse().unwrap();
    assert!((w1 - pi).abs() < 1e-14);
    assert!((c - 1.0).abs() < 1e-14);
    assert!((wb - pi * pi).abs() < 1e-12);
    assert!((cb - pi).abs() < 1e-14);
    // Modal speed grows linearly with n.
    let c3: f64 = rows[2][4].parse().unwrap();
    assert!((c3 / cb - 3.0).abs() < 1e-13);
}

#[test]
fn compare_decomposition_residuals_are_tiny() {
    let dir = tempdir().unwrap();
    let prefix = dir.path().join("cmp");
    let out = beamspec(&[
        "compare",
        "--wave-speed",
        "1.3",
        "--sigma",
        "0.7",
        "--count",
        "4",
        "--points",
        "17",
        "--frames",
        "3",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let split = std::fs::read_to_string(dir.path().join("cmp.decomposition.csv")).unwrap();
    let rows = csv_rows(&split);
    assert_eq!(rows.len(), 4 * 3 * 17);
    for row in rows {
        let residual: f64 = row[6].parse().unwrap();
        assert!(residual < 1e-11);
    }
    assert!(dir.path().join("cmp.dispersion.csv").exists());
}

#[test]
fn verify_clamped_and_free_cases() {
    let out = beamspec(&["verify", "--support", "bb", "--grid", "200"]);
    assert!(out.status.success(), "{}", stdout_str(&out));
    let text = stdout_str(&out);
    assert!(text.contains("adjoint identity deviation 0.0e0 [ok]"));
    assert!(text.contains("all checks passed"));

    let out = beamspec(&["verify", "--support", "cc", "--grid", "100"]);
    assert!(out.status.success());
    assert!(stdout_str(&out).contains("kernel 2 (expected 2) [ok]"));
}

#[test]
fn verify_reports_convergence_order() {
    let out = beamspec(&["verify", "--support", "aa", "--grid", "50,100,200"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("observed convergence order"), "{text}");
    assert!(text.contains("[ok]"));
}

#[test]
fn verify_writes_csv_report() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = beamspec(&[
        "verify",
        "--support",
        "ba",
        "--grid",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("case,m,n,a_spectral,a_fd,rel_error\n"));
    assert_eq!(csv_rows(&text).len(), 3);
}
