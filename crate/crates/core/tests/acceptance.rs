//! Exit-gate checks. Runs without the libtest harness so the criteria execute
//! one at a time (wall-clock budgets are not shared with sibling tests) and
//! each prints one `PASS`/`FAIL` line with its sample counts and budget, even
//! under a plain `cargo test`.

#![allow(clippy::result_large_err)]

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use maba::verify::{cmd_bench, cmd_verify, BenchConfig, Report, RunConfig, SizeOverride};

struct Run {
    suite: &'static str,
    identities: &'static [&'static str],
    sizes: SizeOverride,
}

fn sizes(sites: usize, n: usize, m: usize, total: usize, trials: usize) -> SizeOverride {
    SizeOverride {
        sites: Some(sites),
        n: Some(n),
        m: Some(m),
        total: Some(total),
        trials: Some(trials),
    }
}

fn run(r: &Run) -> maba::Result<Report> {
    let config = RunConfig {
        suites: vec![r.suite.into()],
        identities: r.identities.iter().map(|s| s.to_string()).collect(),
        sizes: BTreeMap::from([(r.suite.to_string(), r.sizes)]),
        ..RunConfig::default()
    };
    cmd_verify(&config)
}

/// Smallest number of draws behind any single (identity, variant, sizes) cell.
fn min_draws(reports: &[Report]) -> usize {
    let mut cells: BTreeMap<String, usize> = BTreeMap::new();
    for r in reports.iter().flat_map(|r| &r.records) {
        *cells
            .entry(format!(
                "{}|{}|{}",
                r.identity,
                r.variant,
                serde_json::to_string(&r.sizes).unwrap()
            ))
            .or_default() += 1;
    }
    cells.values().copied().min().unwrap_or(0)
}

/// Runs the given suites and checks: every record passes, every expected
/// identity appears, each cell has at least `draws` samples, and the whole
/// criterion fits in `budget`.
fn criterion(label: &str, budget: Duration, draws: usize, runs: &[Run]) -> bool {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut reports = Vec::new();
    for r in runs {
        match run(r) {
            Ok(report) => reports.push(report),
            Err(e) => problems.push(format!("{} did not run: {e}", r.suite)),
        }
    }
    let elapsed = start.elapsed();

    let total: usize = reports.iter().map(|r| r.records.len()).sum();
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures())
        .map(|r| format!("{}/{} {} trial {}", r.suite, r.identity, r.variant, r.trial))
        .collect();
    if !failed.is_empty() {
        problems.push(format!("{} failing records, first: {}", failed.len(), failed[0]));
    }
    let seen: BTreeSet<&str> = reports
        .iter()
        .flat_map(|r| &r.records)
        .map(|r| r.identity.as_str())
        .collect();
    for run in runs {
        for id in run.identities {
            if !seen.contains(id) {
                problems.push(format!("{id} produced no records"));
            }
        }
    }
    let fewest = min_draws(&reports);
    if fewest < draws {
        problems.push(format!("only {fewest} draws in some cell, need {draws}"));
    }
    if elapsed > budget {
        problems.push(format!("took {:.1}s", elapsed.as_secs_f64()));
    }
    let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "{verdict} {label}: {total} checks, >= {fewest} draws per cell, {:.1}s of {}s budget",
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    for p in &problems {
        println!("    {p}");
    }
    problems.is_empty()
}

const LAWS: &[&str] = &[
    "shift-between-arguments",
    "shift-between-arguments-conjugate",
    "negation-gives-conjugate",
    "empty-second-argument",
    "empty-second-argument-conjugate",
    "empty-first-argument",
    "empty-first-argument-conjugate",
    "single-first-argument",
    "single-first-argument-conjugate",
    "single-second-argument",
    "single-second-argument-conjugate",
    "shifted-pair-removal",
    "shifted-pair-removal-conjugate",
    "vanishes-at-z1",
    "reduces-to-ordinary",
    "partition-expansion-second",
    "partition-expansion-second-conjugate",
    "partition-expansion-first",
    "partition-expansion-first-conjugate",
    "conjugate-by-transposition",
    "inversion",
    "inversion-conjugate",
    "residue",
    "residue-conjugate",
    "convolution",
    "convolution-conjugate",
    "convolution-shifted",
    "convolution-shifted-conjugate",
    "deformation-sum",
    "deformation-sum-conjugate",
];

fn ac1_izergin_determinant_sides_agree() -> bool {
    criterion(
        "AC1 modified Izergin determinant: both determinant sides agree, n,m in 1..=6, z in {random, 0, 2}",
        Duration::from_secs(30),
        50,
        &[Run {
            suite: "izergin-laws",
            identities: &["determinant-sides-agree", "determinant-sides-agree-conjugate"],
            sizes: sizes(0, 6, 6, 12, 50),
        }],
    )
}

fn ac2_izergin_law_suite() -> bool {
    criterion(
        "AC2 modified Izergin laws at sizes <= 5 (residue at <= 3) plus binomial sums",
        Duration::from_secs(120),
        20,
        &[
            Run {
                suite: "izergin-laws",
                identities: LAWS,
                sizes: sizes(0, 5, 5, 10, 20),
            },
            Run {
                suite: "proof-steps",
                identities: &["binomial-sum"],
                sizes: sizes(0, 5, 0, 5, 20),
            },
        ],
    )
}

fn ac3_yangian_structure() -> bool {
    criterion(
        "AC3 Yang-Baxter, GL(2) invariance, RTT, commutators, multiple exchange, N <= 3, n,m <= 2, t and nu",
        Duration::from_secs(120),
        2,
        &[Run {
            suite: "yangian-structure",
            identities: &[
                "yang-baxter",
                "gl2-invariance-sum",
                "gl2-invariance-product",
                "rtt",
                "general-commutator",
                "equal-entries-commute",
                "exchange-11-12",
                "exchange-22-12",
                "commutator-21-12",
                "multiple-exchange-11",
                "multiple-exchange-22",
                "highest-weight-vector",
            ],
            sizes: sizes(3, 2, 2, 4, 2),
        }],
    )
}

fn ac4_untwisted_actions_and_scalar_products() -> bool {
    criterion(
        "AC4 untwisted multiple actions vs chain (N <= 5, n <= 2, m <= 3) and scalar products (n <= 3)",
        Duration::from_secs(180),
        10,
        &[
            Run {
                suite: "aba-actions",
                identities: &["diagonal-action-11", "diagonal-action-22", "lowering-action"],
                sizes: sizes(5, 2, 3, 5, 10),
            },
            Run {
                suite: "aba-actions",
                identities: &[
                    "scalar-product-sum",
                    "scalar-product-independent-sum",
                    "scalar-product-forms-agree",
                ],
                sizes: sizes(5, 3, 3, 6, 10),
            },
        ],
    )
}

fn ac5_twisted_actions() -> bool {
    criterion(
        "AC5 twisted single and multiple actions vs chain (N <= 5, n <= 2, m <= 3), restricted terms vanish, raising products",
        Duration::from_secs(300),
        5,
        &[Run {
            suite: "maba-actions",
            identities: &[
                "single-action-11",
                "single-action-22",
                "single-action-21",
                "twisted-diagonal-action-11",
                "twisted-diagonal-action-22",
                "twisted-lowering-action",
                "twisted-raising-product",
                "restricted-terms-vanish",
            ],
            sizes: sizes(5, 2, 3, 5, 5),
        }],
    )
}

fn ac6_twisted_scalar_products() -> bool {
    criterion(
        "AC6 twisted scalar products vs chain (N <= 5, n+m <= 5), both forms agree, vacuum averages, untwisted reduction",
        Duration::from_secs(300),
        10,
        &[Run {
            suite: "scalar-products",
            identities: &[
                "twisted-scalar-product",
                "twisted-scalar-product-ik",
                "twisted-forms-agree",
                "vacuum-average",
                "untwisted-reduction",
            ],
            sizes: sizes(5, 5, 5, 5, 10),
        }],
    )
}

fn ac7_phi_symmetry() -> bool {
    criterion(
        "AC7 nu22 action recovered from nu11 under the phi map, n,m <= 2",
        Duration::from_secs(30),
        3,
        &[Run {
            suite: "phi-symmetry",
            identities: &["twisted-diagonal-22-from-11", "diagonal-22-from-11"],
            sizes: sizes(0, 2, 2, 4, 3),
        }],
    )
}

fn ac8_proof_step_sums() -> bool {
    criterion(
        "AC8 single-removal and pole-removal sums equal 1, set sizes <= 8",
        Duration::from_secs(120),
        20,
        &[Run {
            suite: "proof-steps",
            identities: &["single-removal-sum", "pole-removal-sum"],
            sizes: sizes(0, 8, 0, 8, 20),
        }],
    )
}

fn ac9_bench_at_sixteen() -> bool {
    let budget = 60.0;
    let report = match cmd_bench(&BenchConfig {
        min_size: 16,
        max_size: 16,
        jobs: vec![1, 2, 4, 8],
        ..BenchConfig::default()
    }) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL AC9 n+m = 16: bench did not run: {e}");
            return false;
        }
    };
    let slowest = report.rows.iter().map(|r| r.seconds).fold(0.0, f64::max);
    let splits: Vec<u64> = report.rows.iter().map(|r| r.splits).collect();
    let ok = report.counts_ok && report.identical && slowest < budget && splits.iter().all(|&s| s == 65536);
    println!(
        "{} AC9 n+m = 16: splits {:?}, identical across jobs {:?}: {}, slowest evaluation {:.1}s of {budget}s budget",
        if ok { "PASS" } else { "FAIL" },
        splits,
        report.rows.iter().map(|r| r.jobs).collect::<Vec<_>>(),
        report.identical,
        slowest
    );
    ok
}

fn main() -> ExitCode {
    let criteria: [fn() -> bool; 9] = [
        ac1_izergin_determinant_sides_agree,
        ac2_izergin_law_suite,
        ac3_yangian_structure,
        ac4_untwisted_actions_and_scalar_products,
        ac5_twisted_actions,
        ac6_twisted_scalar_products,
        ac7_phi_symmetry,
        ac8_proof_step_sums,
        ac9_bench_at_sixteen,
    ];
    let passed = criteria.iter().filter(|check| check()).count();
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
