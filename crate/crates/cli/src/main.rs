#![allow(clippy::result_large_err)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use maba::verify::{cmd_bench, cmd_scalar, cmd_verify, BenchConfig, RunConfig, ScalarArgs};
use maba::{Error, Scalar, ScalarForm};

/// Exact-arithmetic checks of the modified algebraic Bethe ansatz.
#[derive(Parser)]
#[command(name = "maba", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity suites and write a JSON report.
    Verify(VerifyArgs),
    /// Evaluate one scalar product by formula and by the spin-chain oracle.
    Scalar(Box<ScalarCmd>),
    /// Time the partition-sum evaluation of the twisted scalar product.
    Bench(BenchArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON run configuration; flags given here override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run (repeatable); all suites when absent.
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    /// Identity id to keep (repeatable).
    #[arg(long = "identity", value_name = "ID")]
    identities: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// The constant c as P/Q.
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long)]
    bound: Option<i64>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Record per-check elapsed times in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ScalarCmd {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Chain length.
    #[arg(long)]
    sites: usize,
    /// SCe, SCbe, SPfin or SPfinIK.
    #[arg(long)]
    form: ScalarForm,
    #[arg(long, allow_hyphen_values = true)]
    rho1: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    rho2: Option<Scalar>,
    #[arg(long = "kp", allow_hyphen_values = true)]
    kappa_plus: Option<Scalar>,
    #[arg(long = "km", allow_hyphen_values = true)]
    kappa_minus: Option<Scalar>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    c: Scalar,
    #[arg(long, default_value_t = 12)]
    bound: i64,
    /// Write the full record as JSON.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    min_size: usize,
    #[arg(long, default_value_t = 16)]
    max_size: usize,
    /// Worker count to sweep (repeatable).
    #[arg(long = "jobs", value_name = "J")]
    jobs: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn verify(args: VerifyArgs) -> Result<bool, Error> {
    let mut config = match &args.config {
        Some(path) => RunConfig::from_json_file(path)?,
        None => RunConfig::default(),
    };
    if !args.suites.is_empty() {
        config.suites = args.suites;
    }
    if !args.identities.is_empty() {
        config.identities = args.identities;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(c) = args.c {
        config.c = c;
    }
    if let Some(bound) = args.bound {
        config.bound = bound;
    }
    if let Some(jobs) = args.jobs {
        config.jobs = jobs;
    }
    if args.report.is_some() {
        config.report_path = args.report;
    }
    config.timing |= args.timing;

    let report = cmd_verify(&config)?;
    for r in report.failures() {
        eprintln!(
            "FAIL {}/{} {} trial {}: {} != {}",
            r.suite, r.identity, r.variant, r.trial, r.lhs, r.rhs
        );
    }
    let s = &report.summary;
    println!("{} checks, {} passed, {} failed", s.total, s.passed, s.failed);
    for (suite, counts) in &s.suites {
        println!("  {suite}: {}/{}", counts.passed, counts.passed + counts.failed);
    }
    Ok(report.all_passed())
}

fn scalar(args: ScalarCmd) -> Result<bool, Error> {
    let outcome = cmd_scalar(&ScalarArgs {
        n: args.n,
        m: args.m,
        sites: args.sites,
        form: args.form,
        rho1: args.rho1,
        rho2: args.rho2,
        kappa_plus: args.kappa_plus,
        kappa_minus: args.kappa_minus,
        seed: args.seed,
        c: args.c,
        bound: args.bound,
    })?;
    println!(
        "{} = {}, {}",
        outcome.formula,
        outcome.oracle,
        if outcome.passed { "PASS" } else { "FAIL" }
    );
    if let Some(path) = args.report {
        std::fs::write(&path, outcome.to_json()).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    }
    Ok(outcome.passed)
}

fn bench(args: BenchArgs) -> Result<bool, Error> {
    let mut config = BenchConfig {
        min_size: args.min_size,
        max_size: args.max_size,
        seed: args.seed,
        ..BenchConfig::default()
    };
    if !args.jobs.is_empty() {
        config.jobs = args.jobs;
    }
    let report = cmd_bench(&config)?;
    print!("{}", report.to_json());
    Ok(report.identical && report.counts_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Scalar(a) => scalar(*a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
