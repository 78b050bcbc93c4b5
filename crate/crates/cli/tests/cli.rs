//! End-to-end tests of the `qwalk` binary and its file outputs.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qwalk_cli::output::read_csv;
use serde_json::Value;

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .output()
        .expect("run qwalk")
}

fn ok(args: &[&str]) {
    let out = qwalk(args);
    assert!(
        out.status.success(),
        "qwalk {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn variance_of(xs: &[f64], ps: &[f64]) -> f64 {
    let mean: f64 = xs.iter().zip(ps).map(|(x, p)| x * p).sum();
    xs.iter()
        .zip(ps)
        .map(|(x, p)| p * (x - mean) * (x - mean))
        .sum()
}

#[test]
fn single_run_writes_data_metrics_and_meta() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    ok(&[
        "--preset",
        "theta-high",
        "--steps",
        "60",
        "--seed",
        "42",
        "--out",
        out.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&out).unwrap();
    let (header, cols) = read_csv(&text).unwrap();
    assert_eq!(header, vec!["x", "p"]);
    assert_eq!(cols[0].len(), 121);

    let metrics = json(&dir.path().join("d.metrics.json"));
    assert_eq!(metrics["seed"], 42);
    assert_eq!(metrics["runs"][0]["preset"], "theta-high");
    let meta = json(&dir.path().join("d.meta.json"));
    assert!(meta["seed_mixer"].as_str().unwrap().contains("splitmix64"));
    assert_eq!(meta["config"]["master_seed"], 42);
    assert!(meta["generated_unix_time"].is_u64());
    assert!(meta["version"].is_string());
}

#[test]
fn metrics_variance_round_trips_through_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    ok(&[
        "--preset",
        "full-range",
        "--steps",
        "80",
        "--realizations",
        "5",
        "--seed",
        "3",
        "--reference-theta",
        "pi/4",
        "--out",
        out.to_str().unwrap(),
    ]);
    let (header, cols) = read_csv(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(header, vec!["x", "p_mean"]);
    let recomputed = variance_of(&cols[0], &cols[1]);
    let run = &json(&dir.path().join("r.metrics.json"))["runs"][0];
    let reported = run["variance"].as_f64().unwrap();
    assert!((recomputed - reported).abs() <= 1e-9 * reported.max(1.0));
    assert!(run["loc_length_ratio"].as_f64().unwrap() > 0.0);
    assert!(run["variance_ratio"].as_f64().is_some());
    assert!(run["mean_variance"].as_f64().is_some());
    assert_eq!(
        run["reference_theta"].as_f64().unwrap(),
        std::f64::consts::FRAC_PI_4
    );
}

#[test]
fn json_data_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.json");
    ok(&[
        "--steps",
        "10",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    let v = json(&out);
    assert_eq!(v["columns"], serde_json::json!(["x", "p"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 21);
}

#[test]
fn fig3_recipe_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig3");
    ok(&[
        "--recipe",
        "fig3",
        "--seed",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    for t in [100usize, 200, 400] {
        for regime in ["theta-high", "hadamard-ordered"] {
            let path = out.join(format!("fig3_{regime}_t{t}.csv"));
            let (header, cols) = read_csv(&fs::read_to_string(&path).unwrap()).unwrap();
            assert_eq!(header, vec!["x", "p"]);
            assert_eq!(cols[0].len(), 2 * t + 1);
            assert_eq!(cols[0][0], -(t as f64));
            assert_eq!(*cols[0].last().unwrap(), t as f64);
        }
    }
    let metrics = json(&out.join("metrics.json"));
    let runs = metrics["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 6);
    let localized: Vec<_> = runs
        .iter()
        .filter(|r| r["preset"] == "theta-high")
        .collect();
    assert_eq!(localized.len(), 3);
    for r in localized {
        assert!(r["loc_length_ratio"].as_f64().unwrap() < 1.0);
    }
    assert!(out.join("meta.json").exists());
}

#[test]
fn fig1_recipe_has_classical_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1");
    ok(&[
        "--recipe",
        "fig1",
        "--steps",
        "100",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    let path = out.join("fig1_full-range_t100.csv");
    let (header, cols) = read_csv(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(header, vec!["x", "p", "p_crw"]);
    assert!((variance_of(&cols[0], &cols[2]) - 100.0).abs() < 1e-9);
    let run = &json(&out.join("metrics.json"))["runs"][0];
    assert!((run["classical_variance"].as_f64().unwrap() - 100.0).abs() < 1e-9);
    assert!(run["variance"].as_f64().unwrap() > 0.0);
}

#[test]
fn fig2_and_fig4_recipes() {
    let dir = tempfile::tempdir().unwrap();
    let fig2 = dir.path().join("fig2");
    ok(&[
        "--recipe",
        "fig2",
        "--realizations",
        "3",
        "--out",
        fig2.to_str().unwrap(),
    ]);
    for preset in ["hadamard-ordered", "full-range", "theta-low", "theta-high"] {
        assert!(
            fig2.join(format!("fig2_{preset}_t200.csv")).exists(),
            "{preset}"
        );
    }
    let header = fs::read_to_string(fig2.join("fig2_theta-low_t200.csv")).unwrap();
    assert!(header.starts_with("x,p_mean\n"));
    let header = fs::read_to_string(fig2.join("fig2_hadamard-ordered_t200.csv")).unwrap();
    assert!(header.starts_with("x,p\n"));

    let fig4 = dir.path().join("fig4");
    ok(&[
        "--recipe",
        "fig4",
        "--steps",
        "50",
        "--realizations",
        "4",
        "--out",
        fig4.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(fig4.join("fig4_theta-high_loc_length_t50.csv")).unwrap();
    let (header, cols) = read_csv(&text).unwrap();
    assert_eq!(
        header,
        vec![
            "t",
            "theta_ref",
            "sigma_disordered",
            "sigma_ordered",
            "l_loc",
            "variance_ratio"
        ]
    );
    assert_eq!(cols[0].len(), 150);
    let loc = json(&fig4.join("metrics.json"))["localization"].clone();
    assert_eq!(loc.as_array().unwrap().len(), 3);
}

#[test]
fn inverted_range_is_usage_error_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.csv");
    let res = qwalk(&["--theta-range", "1.0:0.2", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("theta_range"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn usage_errors_exit_nonzero() {
    for args in [
        vec!["--steps", "-5", "--out", "x.csv"],
        vec!["--steps", "7"],
        vec!["--unknown", "--out", "x.csv"],
        vec!["--recipe", "fig9", "--out", "x"],
    ] {
        let res = qwalk(&args);
        assert_eq!(res.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_path_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let out = blocker.join("d.csv");
    let res = qwalk(&["--steps", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    let res = qwalk(&["--help"]);
    assert!(res.status.success());
    assert!(String::from_utf8_lossy(&res.stdout).contains("--theta-range"));
}
