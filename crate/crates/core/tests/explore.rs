use std::process::Command;

use procmat::conditioning::FCoefficients;
use procmat::explore::{
    bundled_anchors, parse_heatmap, parse_legend, read_csv, sweep, witness_cover, SweepConfig, WitnessSurface,
};
use procmat::sdp::{ClarabelAdapter, SolveStatus};
use procmat::tensor::c;

fn procmat() -> Command {
    Command::new(env!("CARGO_BIN_EXE_procmat"))
}

#[test]
fn config_file_with_flags_on_top() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(
        &path,
        "# star with a 3x2 grid\npreset = star\ngrid = 3x2\nc15 = -0.1, 0.05\njobs = 1\n",
    )
    .unwrap();
    let cfg = SweepConfig::load(&path).unwrap();
    assert_eq!((cfg.grid_q, cfg.grid_theta), (3, 2));
    assert_eq!(cfg.coefficients.c11, c(0.125, 0.0));
    assert_eq!(cfg.coefficients.c15, c(-0.1, 0.05));
    assert_eq!(cfg.label(), "custom");
    assert!(SweepConfig::parse("grid = 1x5").and_then(|c| c.validate()).is_err());
    assert!(SweepConfig::parse("colour = blue").is_err());
    assert!(SweepConfig::parse("c11 = 0.3").and_then(|c| c.validate()).is_err());
}

#[test]
fn sweep_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = SweepConfig::preset("star").unwrap().with_grid(3, 2);
    cfg.out_dir = dir.path().to_path_buf();
    cfg.jobs = 2;
    let result = sweep(&cfg).unwrap();
    assert!(result.all_optimal());
    let (csv, svg) = result.write(&cfg.out_dir).unwrap();
    let rows = read_csv(&std::fs::read_to_string(csv).unwrap()).unwrap();
    assert_eq!(rows, result.cells);
    let svg = std::fs::read_to_string(svg).unwrap();
    assert!(!svg.contains("href") && !svg.contains("<image"));
    for (i, j, v) in parse_heatmap(&svg).unwrap() {
        assert_eq!(v, result.value(i, j));
    }
    let (lo, hi) = parse_legend(&svg).unwrap();
    assert_eq!((lo, hi), (result.min().robustness, result.max().robustness));
    // q = 0 and q = 1 are the OCB process and its complement
    let expected = 3.0 - 2.0 * 2f64.sqrt();
    assert!((result.value(0, 0) - expected).abs() < 1e-6);
    assert!((result.value(2, 1) - expected).abs() < 1e-6);
}

#[test]
fn coverage_surfaces_are_linear_in_the_plane() {
    let cf = FCoefficients::preset("star").unwrap();
    let anchors: Vec<_> = bundled_anchors()
        .into_iter()
        .filter(|a| a.label == "f" || a.label == "a")
        .collect();
    let report = witness_cover(&cf, &anchors, 6, 5, &ClarabelAdapter::default(), 1).unwrap();
    assert_eq!(report.regions.len(), 2);
    let f = report.region("f").unwrap();
    let surface: WitnessSurface = f.surface.unwrap();
    assert!((surface.at(0.5, std::f64::consts::PI) - f.value_at_anchor).abs() < 1e-7);
    assert_eq!(f.mask.len(), 30);
}

#[test]
fn cli_sweep_writes_files_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = procmat()
        .args(["sweep", "--preset", "zero", "--grid", "3x2", "--jobs", "1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("zero.csv")).unwrap();
    assert!(csv.starts_with("q,theta,robustness,status,wall_ms\n"));
    let rows = read_csv(&csv).unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.status == SolveStatus::Optimal));
    assert!(dir.path().join("zero.svg").exists());
}

#[test]
fn cli_flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "preset = star\ngrid = 40x40\n").unwrap();
    let out = procmat()
        .args(["sweep", "--grid", "2x2", "--c11", "-0.1,0", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_csv(&std::fs::read_to_string(dir.path().join("custom.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 4);
}

#[test]
fn cli_reports_bad_input_with_exit_code_two() {
    for args in [
        vec!["sweep", "--preset", "nope"],
        vec!["sweep", "--grid", "7"],
        vec!["sweep", "--c11", "0.4"],
        vec!["robustness", "w_unknown"],
        vec!["demo", "nothing"],
    ] {
        let out = procmat().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn cli_demos_pass() {
    let out = procmat().args(["demo", "all"]).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.matches("\nPASS").count(), 6);
}

#[test]
fn cli_robustness_of_a_named_process() {
    let out = procmat().args(["robustness", "w_ocb"]).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("C_R = 0.171572"), "{text}");
}
