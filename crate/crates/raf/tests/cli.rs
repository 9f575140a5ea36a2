//! Integration tests for the `raf` binary: exit codes, artifact layout,
//! config-file merging and manifest round-trips.

use std::path::Path;
use std::process::Command;

fn raf() -> Command {
    Command::new(env!("CARGO_BIN_EXE_raf"))
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn kernel_check_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let status = raf()
        .args([
            "kernel-check",
            "--triples",
            "200",
            "--configs",
            "5",
            "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "report_kernel.json")).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report["max_covariance_residual"].as_f64().unwrap() < 1e-10);
    let manifest: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "manifest.json")).unwrap();
    assert_eq!(manifest["subcommand"], "kernel-check");
}

#[test]
fn validation_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    // Positive curvature is out of the model family.
    let status = raf()
        .args(["sample-zeros", "--kappa", "0.5", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // Unknown ensemble.
    let status = raf()
        .args(["converge-test", "--ensemble", "cauchy", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // Frame center outside the domain.
    let status = raf()
        .args(["sample-zeros", "--abs-u", "1.5", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // Unknown flag.
    let status = raf().args(["littlewood", "--frobnicate"]).status().unwrap();
    assert_ne!(status.code(), Some(0));
}

#[test]
fn littlewood_artifacts_and_manifest_round_trip() {
    let dir_a = tempfile::tempdir().unwrap();
    let status = raf()
        .args(["littlewood", "--n", "6", "--raster", "128", "--out"])
        .arg(dir_a.path())
        .status()
        .unwrap();
    assert!(status.success());
    for name in [
        "roots.bin",
        "roots.json",
        "raster.pgm",
        "raster.json",
        "manifest.json",
    ] {
        assert!(dir_a.path().join(name).exists(), "{name} missing");
    }
    let sidecar: serde_json::Value =
        serde_json::from_slice(&read(dir_a.path(), "roots.json")).unwrap();
    assert_eq!(sidecar["count"], 6 * 2u64.pow(7));
    assert_eq!(sidecar["symmetries_verified"]["conjugation"], true);
    assert_eq!(sidecar["symmetries_verified"]["inversion"], true);
    let pgm = read(dir_a.path(), "raster.pgm");
    assert!(pgm.starts_with(b"P5\n128 128\n65535\n"));

    // Re-running from the manifest reproduces the outputs byte for byte.
    let dir_b = tempfile::tempdir().unwrap();
    let status = raf()
        .arg("littlewood")
        .arg("--config")
        .arg(dir_a.path().join("manifest.json"))
        .arg("--out")
        .arg(dir_b.path())
        .status()
        .unwrap();
    assert!(status.success());
    for name in ["roots.bin", "roots.json", "raster.pgm", "raster.json"] {
        assert_eq!(
            read(dir_a.path(), name),
            read(dir_b.path(), name),
            "{name} differs after manifest round-trip"
        );
    }
}

#[test]
fn manifest_subcommand_mismatch_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let status = raf()
        .args(["littlewood", "--n", "4", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let status = raf()
        .arg("fractal")
        .arg("--config")
        .arg(dir.path().join("manifest.json"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(
        &cfg_path,
        serde_json::json!({"n": 5, "raster": 64}).to_string(),
    )
    .unwrap();
    let out = dir.path().join("out");
    let status = raf()
        .args(["littlewood", "--config"])
        .arg(&cfg_path)
        .args(["--n", "4", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    // Flag wins over the file for n; the file still supplies raster.
    let manifest: serde_json::Value = serde_json::from_slice(&read(&out, "manifest.json")).unwrap();
    assert_eq!(manifest["params"]["n"], 4);
    assert_eq!(manifest["params"]["raster"], 64);
    let sidecar: serde_json::Value = serde_json::from_slice(&read(&out, "roots.json")).unwrap();
    assert_eq!(sidecar["count"], 4 * 2u64.pow(5));
}

#[test]
fn converge_test_emits_ks_table() {
    let dir = tempfile::tempdir().unwrap();
    let status = raf()
        .args([
            "converge-test",
            "--samples",
            "30",
            "--abs-u",
            "0.3,0.6",
            "--seed",
            "3",
            "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let table = String::from_utf8(read(dir.path(), "report_ks.csv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "abs_u,ks");
    assert_eq!(lines.len(), 3);
    assert!(dir.path().join("samples_base.csv").exists());
    assert!(dir.path().join("samples_u0p300.csv").exists());
    assert!(dir.path().join("samples_u0p600.csv").exists());
    let sample = String::from_utf8(read(dir.path(), "samples_u0p300.csv")).unwrap();
    assert!(sample.starts_with("# ensemble: quaternary"));
    assert_eq!(sample.lines().filter(|l| !l.starts_with('#')).count(), 30);
}

#[test]
fn fractal_boxdim_report() {
    let dir = tempfile::tempdir().unwrap();
    let status = raf()
        .args([
            "fractal", "--z", "0.333333", "--depth", "14", "--boxdim", "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "report_fractal.json")).unwrap();
    let estimate = report["estimate"].as_f64().unwrap();
    let target = 2.0f64.ln() / 3.0f64.ln();
    assert!(
        (estimate - target).abs() < 0.08,
        "estimate {estimate} vs log2/log3 {target}"
    );
    assert_eq!(report["bound_satisfied"], true);
    // Binary point dump round-trips.
    let points = raf::io::read_complex_binary(&dir.path().join("points.bin")).unwrap();
    assert_eq!(points.len(), 1 << 15);
}

#[test]
fn sample_zeros_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let status = raf()
        .args([
            "sample-zeros",
            "--samples",
            "20",
            "--abs-u",
            "0.4",
            "--raster",
            "32",
            "--seed",
            "8",
            "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let zeros = String::from_utf8(read(dir.path(), "zeros.csv")).unwrap();
    assert!(zeros.starts_with("# columns: sample_index,re,im"));
    let stats = String::from_utf8(read(dir.path(), "samples_statistic.csv")).unwrap();
    assert_eq!(stats.lines().filter(|l| !l.starts_with('#')).count(), 20);
    assert!(dir.path().join("raster_intensity.pgm").exists());
    assert!(dir.path().join("raster_intensity.json").exists());
}
