//! End-to-end runs of the command line front end in temp directories.

use std::fs;
use std::path::Path;

use nls_spectra::cli::run;

fn args(v: &[&str]) -> Vec<String> {
    std::iter::once("nls-spectra".to_string())
        .chain(v.iter().map(|s| s.to_string()))
        .collect()
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("config.json");
    fs::write(&path, body).unwrap();
    path
}

const SMALL_COMPARE: &str = r#"{
    "grid": {"sample_count": 32, "period": 32.0},
    "link": {"kind": "dimensionless", "epsilon": 1.0},
    "input": {"kind": "gaussian_process", "amplitude_sq": 0.05, "width": 1.0},
    "z": 1.0,
    "seed": 11,
    "realizations": 60
}"#;

#[test]
fn compare_emits_tables_and_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL_COMPARE);
    let out = tmp.path().join("run");
    let code = run(args(&[
        "compare",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, 0);
    let csv = fs::read_to_string(out.join("compare.csv")).unwrap();
    assert!(csv.starts_with("k,s0,s_gn,s_kz,delta_s,s_mc,stderr_mc"));
    assert_eq!(csv.lines().count(), 33);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert!(summary["l2_gn_vs_mc"].as_f64().unwrap() > 0.0);
    assert!(summary["kz_closer"].is_boolean());
    assert!(out.join("plot.txt").exists());
}

#[test]
fn identical_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL_COMPARE);
    let out_a = tmp.path().join("a");
    let out_b = tmp.path().join("b");
    for out in [&out_a, &out_b] {
        let code = run(args(&[
            "compare",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]));
        assert_eq!(code, 0);
    }
    for name in ["compare.csv", "summary.json", "plot.txt"] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn schema_violation_exits_2_with_position() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{
            "grid": {"sample_count": 32, "period": 32.0},
            "link": {"kind": "dimensionless", "epsilon": 1.0, "typo_field": 3},
            "input": {"kind": "gaussian_pulse", "amplitude": 0.5},
            "z": 1.0,
            "seed": 1
        }"#,
    );
    let out = tmp.path().join("run");
    let code = run(args(&[
        "oracle",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, 2);
}

#[test]
fn oracle_handles_deterministic_pulses() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{
            "grid": {"sample_count": 64, "period": 32.0},
            "link": {"kind": "dimensionless", "epsilon": 1.0},
            "input": {"kind": "gaussian_pulse", "amplitude": 0.5},
            "z": 1.0,
            "seed": 1
        }"#,
    );
    let out = tmp.path().join("run");
    assert_eq!(
        run(args(&["oracle", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])),
        0
    );
    let csv = fs::read_to_string(out.join("oracle.csv")).unwrap();
    assert!(csv.starts_with("k,s0,s_out,stderr"));
    // lossless propagation conserves the summed power column
    let (mut e_in, mut e_out) = (0.0f64, 0.0f64);
    for line in csv.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
        e_in += cols[0];
        e_out += cols[1];
    }
    assert!((e_in - e_out).abs() <= 1e-9 * e_in);
}

#[test]
fn quartets_subcommand_writes_only_trivial_rows_for_quadratic() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("quartets.csv");
    let code = run(args(&["quartets", "--zeta", "k^2", "--box", "8", "--out", out.to_str().unwrap()]));
    assert_eq!(code, 0);
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("l,m,n,k,class,resonant"));
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let (l, m, n, k): (i64, i64, i64, i64) = (
            cols[0].parse().unwrap(),
            cols[1].parse().unwrap(),
            cols[2].parse().unwrap(),
            cols[3].parse().unwrap(),
        );
        assert!((l == n && m == k) || (l == k && m == n), "non-trivial row {line}");
        assert_eq!(cols[5], "true");
        assert!(cols[4] == "Spm" || cols[4] == "Xpm");
    }
}

#[test]
fn perturb_emits_monotone_error_table() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{
            "grid": {"sample_count": 64, "period": 32.0},
            "link": {"kind": "dimensionless", "epsilon": 1.0},
            "input": {"kind": "gaussian_pulse", "amplitude": 0.5},
            "z": 1.0,
            "seed": 1,
            "amplitudes": [0.2, 0.5, 0.8]
        }"#,
    );
    let out = tmp.path().join("run");
    assert_eq!(
        run(args(&["perturb", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])),
        0
    );
    let csv = fs::read_to_string(out.join("perturb.csv")).unwrap();
    let errors: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(errors.len(), 3);
    assert!(errors[0] < errors[1] && errors[1] < errors[2]);
}

#[test]
fn modes_requires_sample_lists() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{
            "grid": {"sample_count": 64, "period": 32.0},
            "link": {"kind": "dimensionless", "epsilon": 1.0},
            "input": {"kind": "gaussian_pulse", "amplitude": 2.0},
            "z": 1.0,
            "seed": 1
        }"#,
    );
    let out = tmp.path().join("run");
    assert_eq!(
        run(args(&["modes", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])),
        2
    );
}

#[test]
fn modes_writes_trajectories() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{
            "grid": {"sample_count": 64, "period": 32.0},
            "link": {"kind": "dimensionless", "epsilon": 1.0},
            "input": {"kind": "gaussian_pulse", "amplitude": 2.0},
            "z": 1.0,
            "seed": 1,
            "z_samples": [0.5, 1.0, 1.5],
            "modes": [0, -32]
        }"#,
    );
    let out = tmp.path().join("run");
    assert_eq!(
        run(args(&["modes", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])),
        0
    );
    let csv = fs::read_to_string(out.join("modes.csv")).unwrap();
    assert!(csv.starts_with("z,p_0,p_-32"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn wdm_writes_reports_and_psds() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{
            "grid": {"sample_count": 32, "period": 32.0},
            "link": {"kind": "dimensionless", "epsilon": 1.0},
            "input": {"kind": "wdm", "users": 3, "modes_per_user": 4,
                      "basis": "delayed_flat", "symbols": "constant_modulus",
                      "symbol_power": 1.0},
            "z": 1.0,
            "seed": 9
        }"#,
    );
    let out = tmp.path().join("run");
    assert_eq!(
        run(args(&["wdm", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])),
        0
    );
    let report: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(out.join("interference_report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["user"], 0);
    for model in ["gn", "kz"] {
        for field in ["total_intra", "total_one_wave", "total_two_wave", "total_three_wave"] {
            assert!(report[model][field].is_number(), "{model}.{field} missing");
        }
    }
    let csv = fs::read_to_string(out.join("wdm_psd.csv")).unwrap();
    assert!(csv.starts_with("k,s0,gn_corrected,kz_corrected"));
}

#[test]
fn multispan_reports_scaling_slope() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{
            "grid": {"sample_count": 64, "period": 64.0},
            "link": {"kind": "dimensionless", "epsilon": 1.0, "alpha": 0.2,
                     "span_length": 1.0, "span_count": 4},
            "input": {"kind": "gaussian_process", "amplitude_sq": 0.01, "width": 16.0},
            "z": 4.0,
            "seed": 3
        }"#,
    );
    let out = tmp.path().join("run");
    assert_eq!(
        run(args(&["multispan", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])),
        0
    );
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    let slope = summary["gn_scaling_slope"].as_f64().unwrap();
    assert!((slope - 2.0).abs() < 0.15, "slope {slope}");
    assert!(out.join("sweep.csv").exists());
    assert!(out.join("multispan.csv").exists());
}

#[test]
fn unknown_subcommand_exits_2() {
    assert_eq!(run(args(&["frobnicate"])), 2);
}

#[test]
fn gn_model_table_via_cli() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL_COMPARE);
    let out = tmp.path().join("run");
    assert_eq!(
        run(args(&["gn", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])),
        0
    );
    let csv = fs::read_to_string(out.join("gn.csv")).unwrap();
    assert!(csv.starts_with("k,s0,correction,total"));
    for line in csv.lines().skip(1) {
        let corr: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!(corr >= 0.0);
    }
}
