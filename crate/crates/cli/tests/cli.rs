use std::f64::consts::FRAC_PI_3;
use std::process::{Command, Output};

use serde_json::Value;

fn lgsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgsim"))
        .args(args)
        .env_remove("LGSIM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn three_row_sweep_has_four_lines() {
    let out = lgsim(&["sweep", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.ends_with('\n') && !text.contains('\r'));
    assert_eq!(
        text.lines().next().unwrap(),
        "theta,c12,c23,c13,k,k_analytic,abs_error"
    );
    for line in text.lines() {
        assert!(!line.ends_with(','));
    }
}

#[test]
fn default_sweep_hits_the_landmark() {
    let out = lgsim(&["sweep"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 721);
    assert!(rows.iter().all(|r| r[6] <= 1e-9));
    let row = rows
        .iter()
        .find(|r| (r[0] - FRAC_PI_3).abs() < 5e-10)
        .unwrap();
    assert!((row[4] - 1.5).abs() <= 1e-9);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["sweep", "--steps", "1"],
        vec!["sweep", "--format", "svg"],
        vec!["sweep", "--epsilon", "0"],
        vec!["bogus"],
    ] {
        let out = lgsim(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = lgsim(&["sweep", "--steps", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--steps"));
}

#[test]
fn help_exits_zero() {
    let out = lgsim(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("noninvasive-check"));
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = lgsim(&["noise-check", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn svg_has_two_violation_regions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.svg");
    let out = lgsim(&["sweep", "--format", "svg", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches(r#"class="violation""#).count(), 2);
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.contains(r#"class="classical-bound""#));
    assert!(!svg.contains("href"));
}

#[test]
fn correlations_svg_has_three_curves() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.svg");
    let out = lgsim(&[
        "correlations",
        "--format",
        "svg",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn json_round_trips_at_serialized_precision() {
    let csv = stdout(&lgsim(&["sweep", "--steps", "13"]));
    let json = stdout(&lgsim(&["sweep", "--steps", "13", "--format", "json"]));
    let doc: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["config"]["steps"], 13);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 13);
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    for (row, line) in rows.iter().zip(csv.lines().skip(1)) {
        for (name, cell) in header.iter().zip(line.split(',')) {
            let from_json = row[*name].as_f64().unwrap();
            let from_csv: f64 = cell.parse().unwrap();
            assert!((from_json - from_csv).abs() <= 5e-10, "{name}");
        }
    }
}

#[test]
fn config_file_and_env_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"noise-sigma": 0.05, "seed": 3}"#).unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = stdout(&lgsim(&["tomography", "--config", cfg]));
    let explicit = stdout(&lgsim(&[
        "tomography",
        "--noise-sigma",
        "0.05",
        "--seed",
        "3",
    ]));
    assert_eq!(from_file, explicit);
    let overridden = stdout(&lgsim(&["tomography", "--config", cfg, "--seed", "4"]));
    assert_ne!(from_file, overridden);

    let via_env = Command::new(env!("CARGO_BIN_EXE_lgsim"))
        .args(["tomography", "--noise-sigma", "0.05"])
        .env("LGSIM_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(via_env.stdout).unwrap(), explicit);
}

#[test]
fn noninvasive_check_passes() {
    let out = lgsim(&["noninvasive-check"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "max_td_mixed,max_td_pure,pairs"
    );
}
