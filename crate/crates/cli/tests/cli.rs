use std::path::Path;
use std::process::{Command, Output};

fn maba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maba"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn scalar_of_empty_sets_is_one() {
    let o = maba(&["scalar", "--n", "0", "--m", "0", "--sites", "2", "--form", "SPfin"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 = 1, PASS");
}

#[test]
fn scalar_forms_agree_with_chain() {
    for form in ["SCe", "SCbe", "SPfin", "SPfinIK"] {
        let o = maba(&[
            "scalar", "--n", "1", "--m", "1", "--sites", "2", "--form", form, "--seed", "5",
        ]);
        assert_eq!(o.status.code(), Some(0), "{form}: {}", stderr(&o));
        let line = stdout(&o);
        let (lhs, rest) = line.trim().split_once(" = ").unwrap();
        assert_eq!(rest, format!("{lhs}, PASS"));
    }
    let o = maba(&[
        "scalar", "--n", "1", "--m", "2", "--sites", "3", "--form", "SPfin", "--rho1", "1/2", "--rho2", "-2/3", "--kp",
        "3", "--km", "-5/4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).trim().ends_with("PASS"));
}

#[test]
fn scalar_domain_errors_exit_2() {
    let o = maba(&[
        "scalar", "--n", "1", "--m", "2", "--sites", "3", "--form", "SPfinIK", "--rho1", "0", "--rho2", "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mu = 1"), "{}", stderr(&o));

    let o = maba(&["scalar", "--n", "1", "--m", "2", "--sites", "3", "--form", "SCe"]);
    assert_eq!(o.status.code(), Some(2));

    let o = maba(&["scalar", "--n", "1", "--m", "1", "--sites", "2", "--form", "SPfinXX"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scalar_writes_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scalar.json");
    let o = maba(&[
        "scalar",
        "--n",
        "1",
        "--m",
        "1",
        "--sites",
        "2",
        "--form",
        "SPfin",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["formula"], v["oracle"]);
    assert_eq!(v["record"]["status"], "pass");
}

fn run_verify(dir: &Path, name: &str, extra: &[&str]) -> (Output, String) {
    let path = dir.join(name);
    let mut args = vec!["verify", "--report", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = maba(&args);
    let report = std::fs::read_to_string(&path).unwrap_or_default();
    (o, report)
}

#[test]
fn verify_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, ra) = run_verify(dir.path(), "a.json", &["--suite", "izergin-laws", "--seed", "1"]);
    let (b, rb) = run_verify(
        dir.path(),
        "b.json",
        &["--suite", "izergin-laws", "--seed", "1", "--jobs", "2"],
    );
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(ra, rb);
    let v: serde_json::Value = serde_json::from_str(&ra).unwrap();
    assert!(v["records"].as_array().unwrap().len() > 100);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"suites": ["izergin-laws"], "seed": 4, "c": "1/2", "sizes": {"proof-steps": {"n": 2, "trials": 1}}}"#,
    )
    .unwrap();
    let (o, report) = run_verify(
        dir.path(),
        "r.json",
        &[
            "--config",
            cfg.to_str().unwrap(),
            "--suite",
            "proof-steps",
            "--seed",
            "7",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["c"], "1/2");
    let records = v["records"].as_array().unwrap();
    assert!(records.iter().all(|r| r["suite"] == "proof-steps"));
    // n = 2, one trial: four removal/alternating ids at p = 1, 2 plus six binomial cases.
    assert_eq!(records.len(), 14);
}

#[test]
fn invalid_configuration_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for extra in [
        &["--suite", "nonsense"][..],
        &["--c", "0"],
        &["--jobs", "0"],
        &["--bound", "1"],
    ] {
        let (o, _) = run_verify(dir.path(), "x.json", extra);
        assert_eq!(o.status.code(), Some(2), "{extra:?}");
    }
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{not json").unwrap();
    let (o, _) = run_verify(dir.path(), "x.json", &["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let (o, _) = run_verify(dir.path(), "x.json", &["--config", "/nonexistent/run.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_emits_json() {
    let o = maba(&[
        "bench",
        "--min-size",
        "6",
        "--max-size",
        "7",
        "--jobs",
        "1",
        "--jobs",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["identical"], true);
    assert_eq!(v["counts_ok"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[2]["splits"], 128);
    assert_eq!(rows[2]["value_digest"], rows[3]["value_digest"]);
    for key in ["seconds", "splits_per_second", "speedup"] {
        assert!(rows[0][key].is_number(), "{key}");
    }
}
