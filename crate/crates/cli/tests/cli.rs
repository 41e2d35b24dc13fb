use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_muscle-fatigue"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn assert_single_line_error(o: &Output, code: &str) {
    assert!(!o.status.success());
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "stderr: {err}");
    assert!(err.starts_with(&format!("{code}: ")), "stderr: {err}");
}

fn summary(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

#[test]
fn simulate_constant_half_load_reports_exhaustion() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("p.csv"), "time_min,load_N\n0,50\n2,50\n").unwrap();
    let o = run(tmp.path(), &["simulate", "--profile", "p.csv", "--mvc", "100", "--out", "out"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = summary(&tmp.path().join("out"));
    let t = s["exhausted_at"].as_f64().unwrap();
    assert!((t - 2.0 * 2f64.ln()).abs() < 1e-4, "{t}");
    assert!((s["final_f_cem"].as_f64().unwrap() - 50.0).abs() < 1e-6);
    assert_eq!(s["u_unit"], "min");

    let csv = fs::read_to_string(tmp.path().join("out/trajectory.csv")).unwrap();
    assert!(csv.starts_with("time_min,f_cem_N,u_index,f_integral\n"));
}

#[test]
fn simulate_zero_load_keeps_capacity() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("p.csv"), "time_min,load_N\n0,0\n1.5,0\n").unwrap();
    let o = run(
        tmp.path(),
        &["simulate", "--profile", "p.csv", "--mvc", "250", "--dt", "0.01", "--stride", "10", "--out", "out"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let s = summary(&tmp.path().join("out"));
    assert_eq!(s["final_f_cem"].as_f64().unwrap(), 250.0);
    assert_eq!(s["final_u"].as_f64().unwrap(), 0.0);
    assert!(s["exhausted_at"].is_null());
    let rows = fs::read_to_string(tmp.path().join("out/trajectory.csv")).unwrap().lines().count();
    assert_eq!(rows, 1 + 16);
}

#[test]
fn simulate_missing_file_names_the_path() {
    let tmp = TempDir::new().unwrap();
    let o = run(tmp.path(), &["simulate", "--profile", "absent.csv", "--mvc", "100", "--out", "out"]);
    assert_single_line_error(&o, "E_IO");
    assert!(stderr(&o).contains("absent.csv"));
}

#[test]
fn simulate_malformed_csv_reports_line() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("p.csv"), "time_min,load_N\n0,10\n0.5,ten\n1,10\n").unwrap();
    let o = run(tmp.path(), &["simulate", "--profile", "p.csv", "--mvc", "100", "--out", "out"]);
    assert_single_line_error(&o, "E_PARSE");
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn simulate_rejects_bad_overrides() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("p.csv"), "time_min,load_N\n0,10\n1,10\n").unwrap();
    for args in [["--dt", "0"], ["--k", "-1"], ["--stride", "0"]] {
        let mut all = vec!["simulate", "--profile", "p.csv", "--mvc", "100", "--out", "out"];
        all.extend(args);
        assert_single_line_error(&run(tmp.path(), &all), "E_ARG");
    }
}

#[test]
fn met_dynamic_and_catalog() {
    let tmp = TempDir::new().unwrap();
    let o = run(tmp.path(), &["met", "--fmvc", "0.5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "dynamic f_mvc=0.5 met_min=1.38629");

    let o = run(tmp.path(), &["met", "--fmvc", "0.5", "--model", "rohmert_general"]);
    assert_eq!(stdout(&o).trim(), "rohmert_general f_mvc=0.5 met_min=1.1");

    assert_single_line_error(&run(tmp.path(), &["met", "--fmvc", "0.1", "--model", "monod_scherrer"]), "E_DOMAIN");
    assert_single_line_error(&run(tmp.path(), &["met", "--fmvc", "0.5", "--model", "nobody"]), "E_ARG");
    assert_single_line_error(&run(tmp.path(), &["met", "--fmvc", "1.5"]), "E_DOMAIN");
}

#[test]
fn validate_table2_default_and_region() {
    let tmp = TempDir::new().unwrap();
    let o = run(tmp.path(), &["validate-table2", "--out", "all"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = fs::read_to_string(tmp.path().join("all/table2_report.csv")).unwrap();
    assert_eq!(report.lines().next().unwrap(), "model_id,region,r,icc,n_grid_points");
    assert_eq!(report.lines().count(), 25);
    for region in ["general", "shoulder", "elbow", "hand", "back_hip"] {
        assert!(tmp.path().join(format!("all/curves_{region}.csv")).exists());
        assert!(tmp.path().join(format!("all/icc_{region}.csv")).exists());
    }
    assert!(stdout(&o).contains("Rohmert (posture 5)"));

    let o = run(tmp.path(), &["validate-table2", "--region", "elbow", "--out", "elbow"]);
    assert!(o.status.success());
    let report = fs::read_to_string(tmp.path().join("elbow/table2_report.csv")).unwrap();
    assert_eq!(report.lines().count(), 7);
    assert!(!tmp.path().join("elbow/curves_general.csv").exists());
}

#[test]
fn validate_table2_rejects_short_grid_and_bad_region() {
    let tmp = TempDir::new().unwrap();
    let o = run(
        tmp.path(),
        &["validate-table2", "--grid-start", "0.99", "--grid-end", "0.991", "--grid-step", "0.01", "--out", "x"],
    );
    assert_single_line_error(&o, "E_ARG");
    assert!(stderr(&o).contains("at least 3 points"));
    assert_single_line_error(&run(tmp.path(), &["validate-table2", "--region", "knee", "--out", "x"]), "E_ARG");
}

#[test]
fn validate_table2_rejects_bad_manifest() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("m.json"), r#"{"manifest_version": 1, "models": [{"id": "x"}]}"#).unwrap();
    let o = run(tmp.path(), &["validate-table2", "--manifest", "m.json", "--out", "x"]);
    assert_single_line_error(&o, "E_CONFIG");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let tmp = TempDir::new().unwrap();
    for out in ["a", "b"] {
        assert!(run(tmp.path(), &["validate-table2", "--svg", "--out", out]).status.success());
        assert!(run(tmp.path(), &["compare-dynamic", "--out", &format!("d{out}")]).status.success());
    }
    for (a, b) in [("a", "b"), ("da", "db")] {
        let mut names: Vec<_> = fs::read_dir(tmp.path().join(a)).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        assert!(!names.is_empty());
        for name in names {
            let x = fs::read(tmp.path().join(a).join(&name)).unwrap();
            let y = fs::read(tmp.path().join(b).join(&name)).unwrap();
            assert_eq!(x, y, "{name:?} differs");
        }
    }
}

#[test]
fn compare_dynamic_defaults() {
    let tmp = TempDir::new().unwrap();
    let o = run(tmp.path(), &["compare-dynamic", "--out", "d"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = summary(&tmp.path().join("d"));
    assert!(s["conservation_residual_over_m0"].as_f64().unwrap() < 1e-9);
    assert!(stdout(&o).contains("conservation residual"));

    let devs: Vec<f64> = s["limit_sweep"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[1].as_f64().unwrap())
        .collect();
    assert_eq!(devs.len(), 3);
    assert!(devs.windows(2).all(|w| w[1] < w[0]));

    let sweep = fs::read_to_string(tmp.path().join("d/limit_sweep.csv")).unwrap();
    assert!(sweep.starts_with("beta,transient_end_s,max_deviation,max_deviation_two_term\n"));
    for file in ["mvc_comparison.csv", "reservoir_vs_dynamic.csv", "active_motor_closed_form.csv"] {
        let text = fs::read_to_string(tmp.path().join("d").join(file)).unwrap();
        assert!(text.starts_with("t,value_a,value_b\n"), "{file}");
    }
}

#[test]
fn compare_dynamic_matched_rates_and_singular_fallback() {
    let tmp = TempDir::new().unwrap();
    // k = 60·F makes both full-effort curves the same exponential;
    // B/F = 1.5 = 1 + R/F puts the closed form on its singular line
    fs::write(
        tmp.path().join("params.json"),
        r#"{
            "mvc_comparison": {"k": 1.2, "f_rate": 0.02},
            "active_motor": {"m0": 100, "f_rate": 0.02, "r_rate": 0.01, "b_rate": 0.03, "duration_s": 60}
        }"#,
    )
    .unwrap();
    let o = run(tmp.path(), &["compare-dynamic", "--params", "params.json", "--out", "d"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("notice:"), "{}", stdout(&o));
    let s = summary(&tmp.path().join("d"));
    assert_eq!(s["mvc_max_deviation"].as_f64().unwrap(), 0.0);
    assert_eq!(s["closed_form_singular"], true);
    assert!(s["conservation_residual_over_m0"].as_f64().unwrap() < 1e-9);
}

#[test]
fn compare_dynamic_rejects_unknown_parameters() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("params.json"), r#"{"active_motor": {"speed": 3}}"#).unwrap();
    let o = run(tmp.path(), &["compare-dynamic", "--params", "params.json", "--out", "d"]);
    assert_single_line_error(&o, "E_CONFIG");
}

#[test]
fn usage_errors_are_single_line() {
    let tmp = TempDir::new().unwrap();
    let o = run(tmp.path(), &["simulate", "--mvc", "1"]);
    assert_single_line_error(&o, "E_ARG");
    assert_eq!(o.status.code(), Some(2));
    assert_single_line_error(&run(tmp.path(), &["frobnicate"]), "E_ARG");
    assert!(run(tmp.path(), &["--help"]).status.success());
}
