use std::process::{Command, Output};

use harmzeta_core::SuiteReport;

fn harmzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmzeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_all_routes_agree() {
    let o = harmzeta(&["compute", "M", "--method", "all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["rows"].as_array().unwrap().len() >= 10);
    assert!(v["spread"].as_f64().unwrap() <= 2e-9);
}

#[test]
fn compute_single_m1_route() {
    let o = harmzeta(&["compute", "M1", "--method", "prop3.l", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "method,value,err_bound,terms,deviation"
    );
    let value: f64 = lines
        .next()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 0.86062).abs() <= 5e-6);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        harmzeta(&["compute", "M", "--method", "nosuch"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        harmzeta(&["verify", "--suite", "nosuch"]).status.code(),
        Some(2)
    );
    assert_eq!(
        harmzeta(&["verify", "--tol", "1e-13"]).status.code(),
        Some(2)
    );
    assert_eq!(harmzeta(&["grid", "eq99"]).status.code(), Some(2));
    assert_eq!(harmzeta(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unreachable_tolerance_exits_3() {
    let o = harmzeta(&["verify", "--suite", "m-routes", "--max-terms", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_all_passes_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = harmzeta(&[
        "verify",
        "--suite",
        "all",
        "--tol",
        "1e-9",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let report = SuiteReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.suite, "all");
    assert_eq!(report.fail_count, 0);
    assert_eq!(report.pass_count, report.results.len());
    let reparsed = SuiteReport::from_json(&report.to_json()).unwrap();
    let classes = |r: &SuiteReport| {
        r.results
            .iter()
            .map(|x| (x.id.clone(), x.status))
            .collect::<Vec<_>>()
    };
    assert_eq!(classes(&reparsed), classes(&report));
}

#[test]
fn genfun_csv_has_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = harmzeta(&[
        "verify",
        "--suite",
        "genfun",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "id,lhs,rhs,abs_diff,tol,status");
    let rows: Vec<_> = lines.collect();
    assert!(rows.len() > 100);
    assert!(rows.iter().any(|r| r.starts_with("\"eq13@a=1,x=1.8\"")));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"tolerance": 1e-10, "suites": ["bounds"], "output_format": "json"}"#,
    )
    .unwrap();
    let o = harmzeta(&["verify", "--config", cfg.to_str().unwrap(), "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    let report = SuiteReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.suite, "bounds");
    assert_eq!(report.config.tolerance, 1e-8);
    std::fs::write(&cfg, r#"{"tolerence": 1e-10}"#).unwrap();
    let o = harmzeta(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_output_is_stable_across_runs() {
    let run = || {
        let o = harmzeta(&[
            "verify",
            "--suite",
            "transforms,bounds",
            "--format",
            "csv",
            "--seed",
            "7",
        ]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    assert_eq!(run(), run());
}

#[test]
fn grid_user_points() {
    let o = harmzeta(&["grid", "eq8", "--a", "1,2", "--xfrac", "0.5,0.9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4 evaluated, 0 skipped"));

    let o = harmzeta(&[
        "grid", "eq13", "--a", "1", "--xfrac", "0.99", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = &v["points"][0];
    assert_eq!(p["outcome"], "evaluated");
    assert!(p["x"].as_f64().unwrap() > 1.0);
    assert_eq!(p["status"], "pass");

    let o = harmzeta(&[
        "grid", "thm3.15", "--a", "2", "--xfrac", "0.999", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("k-series"), "{text}");
    assert!(text.contains(",pass,"));

    let o = harmzeta(&["grid", "thm3.14", "--a", "2", "--xfrac", "-0.5,0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 evaluated, 0 skipped"));
}
