//! End-to-end runs of the built binary: exit codes, file formats,
//! determinism, and the binary-grid round trip.

use rotmorse_cli::wgr::read_wgr;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rotmorse"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rotmorse")
}

fn write_cfg(dir: &Path, body: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn channel_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["channel", "--out", tmp.path().to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(tmp.path().join("channel.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "j,rj_approx,rj_solved,Dj,c0,c1,c2,lambda,lambda_bar,n_max"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "0");
    assert!((row[1].parse::<f64>().unwrap() - 5.03).abs() < 1e-12);
    assert!((row[3].parse::<f64>().unwrap() - 0.057).abs() < 1e-12);
    assert_eq!(row[9], "116");
}

#[test]
fn channel_j60_value() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), r#"{"j_list":[60]}"#);
    let out = run(&[
        "channel",
        "--config",
        &cfg,
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(tmp.path().join("channel.csv")).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert!((row[1].parse::<f64>().unwrap() - 5.0323).abs() < 5e-4);
}

#[test]
fn unknown_config_key_is_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), r#"{"j_lst":[60]}"#);
    let out = run(&["channel", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("config"), "{msg}");
}

#[test]
fn malformed_json_is_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "{not json");
    let out = run(&["channel", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degenerate_phase_space_is_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), r#"{"phase_space":{"n_r":0,"n_p":0}}"#);
    let out = run(&[
        "wigner",
        "--config",
        &cfg,
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_time_fraction_is_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), r#"{"times":["quarter"]}"#);
    let out = run(&[
        "evolve",
        "--config",
        &cfg,
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solver_failure_is_exit_3_and_names_j() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), r#"{"j_list":[700]}"#);
    let out = run(&[
        "channel",
        "--config",
        &cfg,
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("700"));
}

#[test]
fn evolve_sidecar_carries_cat_peaks() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["evolve", "--out", tmp.path().to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let side: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("evolve_j0_t1over4.json")).unwrap(),
    )
    .unwrap();
    let peaks = side["peak_positions"].as_array().unwrap();
    assert_eq!(peaks.len(), 2);
    assert!((peaks[0].as_f64().unwrap() - 4.70).abs() < 0.05);
    assert!((peaks[1].as_f64().unwrap() - 5.58).abs() < 0.05);
    assert!((side["t_rev_ps"].as_f64().unwrap() - 36.2).abs() < 0.1);
    assert_eq!(side["energies"].as_array().unwrap().len(), 117);

    let csv = std::fs::read_to_string(tmp.path().join("evolve_j0_t1over4.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "r,density");
    assert_eq!(csv.lines().count(), 2049);
}

#[test]
fn evolve_j81_ripple_spacing() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), r#"{"j_list":[81]}"#);
    let out = run(&[
        "evolve",
        "--config",
        &cfg,
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let side: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("evolve_j81_t1over4.json")).unwrap(),
    )
    .unwrap();
    let peaks: Vec<f64> = side["peak_positions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert!(peaks.len() >= 5, "{peaks:?}");
    let mean = peaks.windows(2).map(|w| w[1] - w[0]).sum::<f64>() / (peaks.len() - 1) as f64;
    assert!((mean - 0.07).abs() < 0.02, "mean spacing {mean}");
}

#[test]
fn wigner_binary_round_trip_matches_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let small = r#"{"phase_space":{"n_r":32,"p_max":60.0,"n_p":32}}"#;
    let cfg = write_cfg(tmp.path(), small);
    let out_dir = tmp.path().to_str().unwrap();
    assert!(
        run(&["wigner", "--config", &cfg, "--out", out_dir, "--format", "bin"])
            .status
            .success()
    );
    assert!(
        run(&["wigner", "--config", &cfg, "--out", out_dir, "--format", "csv"])
            .status
            .success()
    );

    let grid = read_wgr(&tmp.path().join("wigner_j0_t1over4.wgr")).unwrap();
    assert_eq!((grid.n_r, grid.n_p), (32, 32));
    let csv = std::fs::read_to_string(tmp.path().join("wigner_j0_t1over4.csv")).unwrap();
    for (line, &v) in csv.lines().skip(1).zip(&grid.values) {
        let w: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((w - v).abs() <= 1e-12 * v.abs().max(1.0), "{line} vs {v}");
    }
    // sidecar reports the interference negativity of the cat state
    let side: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("wigner_j0_t1over4.json")).unwrap(),
    )
    .unwrap();
    assert!(side["min_w"].as_f64().unwrap() < 0.0);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg_body = r#"{"j_list":[0,60],"phase_space":{"n_r":24,"n_p":24}}"#;
    for dir in [&a, &b] {
        let cfg = write_cfg(dir.path(), cfg_body);
        let out_dir = dir.path().to_str().unwrap();
        assert!(run(&["channel", "--config", &cfg, "--out", out_dir])
            .status
            .success());
        assert!(
            run(&["wigner", "--config", &cfg, "--out", out_dir, "--format", "bin"])
                .status
                .success()
        );
    }
    for name in [
        "channel.csv",
        "wigner_j0_t1over4.wgr",
        "wigner_j60_t1over4.wgr",
    ] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs between identical runs");
    }
}

#[test]
fn narrow_grid_coverage_is_exit_4() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        r#"{"radial_grid":{"r_min":4.2,"r_max":7.0,"count":512}}"#,
    );
    let out = run(&[
        "wigner",
        "--config",
        &cfg,
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("widen"));
}

#[test]
fn rotate_reference_and_high_j() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), r#"{"j_list":[0,81]}"#);
    let out = run(&[
        "rotate",
        "--config",
        &cfg,
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(tmp.path().join("rotate.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "j,phi_rad,phi_over_pi,phi_unwrapped_rad,overlap,degenerate"
    );
    let r0: Vec<&str> = lines.next().unwrap().split(',').collect();
    let phi0: f64 = r0[1].parse().unwrap();
    assert!(phi0.min(2.0 * std::f64::consts::PI - phi0) < 1e-3);
    assert!((r0[4].parse::<f64>().unwrap() - 1.0).abs() < 1e-6);
    let r81: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!((r81[2].parse::<f64>().unwrap() - 0.5622).abs() < 5e-3);
    assert_eq!(r81[5], "false");
}

#[test]
fn validate_defaults_pass() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["validate", "--out", tmp.path().to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("validate.json")).unwrap())
            .unwrap();
    for check in report.as_array().unwrap() {
        assert_eq!(check["status"], "pass", "{check}");
    }
}

#[test]
fn perturbed_energies_fail_validation() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&[
        "validate",
        "--out",
        tmp.path().to_str().unwrap(),
        "--perturb-energy",
        "1e-4",
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stdout).contains("fail"));
}

#[test]
fn coarse_grid_degrades_orthonormality_without_failing() {
    let tmp = tempfile::tempdir().unwrap();
    // 64 radial points; small momentum window keeps the correlation
    // lattice inside the grid
    let cfg = write_cfg(
        tmp.path(),
        r#"{"radial_grid":{"r_min":3.8,"r_max":8.5,"count":64},
            "phase_space":{"r_min":4.5,"r_max":6.0,"n_r":16,"p_max":20.0,"n_p":16}}"#,
    );
    let out = run(&[
        "validate",
        "--config",
        &cfg,
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("validate.json")).unwrap())
            .unwrap();
    let ortho = report
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "orthonormality")
        .unwrap();
    assert_eq!(ortho["status"], "degraded", "{ortho}");
}
