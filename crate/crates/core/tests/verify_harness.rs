//! The verification harness end to end.

use std::collections::BTreeMap;

use maba::verify::{cmd_verify, default_sizes, identities, RunConfig, SizeOverride, SUITES};
use maba::Error;

fn single(suite: &str) -> RunConfig {
    RunConfig {
        suites: vec![suite.into()],
        ..RunConfig::default()
    }
}

#[test]
fn default_run_passes() {
    let report = cmd_verify(&RunConfig::default()).unwrap();
    for r in report.failures() {
        eprintln!(
            "FAIL {} {} {} trial {} {:?}: {} vs {} {:?}",
            r.suite, r.identity, r.variant, r.trial, r.sizes, r.lhs, r.rhs, r.detail
        );
    }
    assert!(report.all_passed());
    for suite in SUITES {
        assert!(report.summary.suites[suite].passed > 0, "{suite} ran nothing");
    }
    assert_eq!(report.summary.total, report.records.len());
}

#[test]
fn reports_are_byte_identical_across_runs_and_workers() {
    let a = cmd_verify(&single("izergin-laws")).unwrap().to_json();
    let b = cmd_verify(&single("izergin-laws")).unwrap().to_json();
    let c = cmd_verify(&RunConfig {
        jobs: 3,
        ..single("izergin-laws")
    })
    .unwrap()
    .to_json();
    assert_eq!(a, b);
    assert_eq!(a, c);
    let other = cmd_verify(&RunConfig {
        seed: 2,
        ..single("izergin-laws")
    })
    .unwrap()
    .to_json();
    assert_ne!(a, other);
}

#[test]
fn records_are_ordered_by_suite_identity_trial() {
    let report = cmd_verify(&RunConfig {
        suites: vec!["proof-steps".into(), "phi-symmetry".into()],
        ..RunConfig::default()
    })
    .unwrap();
    let pos = |s: &str| SUITES.iter().position(|t| *t == s).unwrap();
    for w in report.records.windows(2) {
        let a = (pos(&w[0].suite), &w[0].identity, w[0].trial);
        let b = (pos(&w[1].suite), &w[1].identity, w[1].trial);
        assert!(a < b, "{a:?} !< {b:?}");
    }
}

#[test]
fn selection_does_not_change_draws() {
    let alone = cmd_verify(&RunConfig {
        identities: vec!["alternating-sum".into()],
        ..single("proof-steps")
    })
    .unwrap();
    let full = cmd_verify(&single("proof-steps")).unwrap();
    let from_full: Vec<_> = full
        .records
        .iter()
        .filter(|r| r.identity == "alternating-sum")
        .cloned()
        .collect();
    assert_eq!(alone.records, from_full);
}

#[test]
fn json_shape() {
    let report = cmd_verify(&RunConfig {
        identities: vec!["binomial-sum".into()],
        ..single("proof-steps")
    })
    .unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert!(v["records"].is_array());
    assert!(v["summary"]["passed"].is_u64());
    let rec = &v["records"][3];
    for key in [
        "suite", "identity", "trial", "sizes", "seed", "params", "status", "lhs", "rhs",
    ] {
        assert!(!rec[key].is_null(), "missing {key}");
    }
    assert!(rec.get("elapsed_ms").is_none());
    assert_eq!(v["c"], "1");

    let timed = cmd_verify(&RunConfig {
        identities: vec!["binomial-sum".into()],
        timing: true,
        ..single("proof-steps")
    })
    .unwrap();
    assert!(timed.records.iter().all(|r| r.elapsed_ms.is_some()));
}

#[test]
fn invalid_configs_are_rejected() {
    let bad = [
        single("no-such-suite"),
        RunConfig {
            c: "0".into(),
            ..RunConfig::default()
        },
        RunConfig {
            c: "one".into(),
            ..RunConfig::default()
        },
        RunConfig {
            jobs: 0,
            ..RunConfig::default()
        },
        RunConfig {
            sizes: BTreeMap::from([(
                "proof-steps".to_string(),
                SizeOverride {
                    trials: Some(0),
                    ..SizeOverride::default()
                },
            )]),
            ..RunConfig::default()
        },
    ];
    for cfg in bad {
        assert!(matches!(cmd_verify(&cfg), Err(Error::Config(_))), "{cfg:?}");
    }
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(
        &path,
        r#"{"suites": ["proof-steps"], "seed": 9, "c": "2/3", "sizes": {"proof-steps": {"n": 3, "trials": 1}}}"#,
    )
    .unwrap();
    let cfg = RunConfig::from_json_file(&path).unwrap();
    assert_eq!(cfg.seed, 9);
    assert_eq!(cfg.sizes_for("proof-steps").n, 3);
    assert_eq!(cfg.sizes_for("proof-steps").trials, 1);
    let report = cmd_verify(&RunConfig {
        report_path: Some(dir.path().join("out.json")),
        ..cfg
    })
    .unwrap();
    assert!(report.all_passed());
    assert_eq!(report.c, "2/3");
    let written = std::fs::read_to_string(dir.path().join("out.json")).unwrap();
    assert_eq!(written, report.to_json());

    std::fs::write(&path, r#"{"suites": ["proof-steps"], "sedd": 9}"#).unwrap();
    assert!(matches!(RunConfig::from_json_file(&path), Err(Error::Config(_))));
}

#[test]
fn every_suite_registers_identities() {
    for suite in SUITES {
        let ids = identities(suite, default_sizes(suite));
        assert!(!ids.is_empty(), "{suite}");
        for id in ids {
            assert!(
                id.chars()
                    .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-'),
                "{id}"
            );
        }
    }
}
