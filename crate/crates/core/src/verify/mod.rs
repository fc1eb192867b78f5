//! Seeded batch verification: identity suites, oracle comparisons and a
//! machine-readable report.
//!
//! Every check is a task that draws its own parameters from a generator seeded
//! by `(run seed, suite, identity, trial)`, so results do not depend on the
//! worker count or on which other suites were selected.

mod actions;
pub mod bench;
mod laws;
mod scalar_products;
mod steps;
mod structure;
mod symmetry;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chain::{state_digest, Chain, Matrix, MAX_SITES};
use crate::error::{Error, Result};
use crate::kernel::{sample_generic, ModelParams};
use crate::partition::CoefficientMap;
use crate::scalar::Scalar;

pub use bench::{cmd_bench, BenchConfig, BenchReport, BenchRow};
pub use scalar_products::{cmd_scalar, ScalarArgs, ScalarOutcome};

/// Registered suites, in report order.
pub const SUITES: [&str; 7] = [
    "izergin-laws",
    "yangian-structure",
    "aba-actions",
    "maba-actions",
    "scalar-products",
    "phi-symmetry",
    "proof-steps",
];

/// Size caps for one suite. `sites` is the largest chain, `n` and `m` the
/// largest set sizes, `total` the largest `n + m`, `trials` the number of
/// draws per size point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteSizes {
    pub sites: usize,
    pub n: usize,
    pub m: usize,
    pub total: usize,
    pub trials: usize,
}

/// Per-suite override as read from a config file; unset fields keep defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SizeOverride {
    pub sites: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub total: Option<usize>,
    pub trials: Option<usize>,
}

pub fn default_sizes(suite: &str) -> SuiteSizes {
    let s = |sites, n, m, total, trials| SuiteSizes {
        sites,
        n,
        m,
        total,
        trials,
    };
    match suite {
        "izergin-laws" => s(0, 4, 4, 8, 4),
        "yangian-structure" => s(3, 2, 2, 4, 2),
        "aba-actions" => s(4, 2, 3, 5, 2),
        "maba-actions" => s(3, 2, 3, 5, 2),
        "scalar-products" => s(4, 3, 3, 4, 2),
        "phi-symmetry" => s(0, 2, 2, 4, 3),
        "proof-steps" => s(0, 6, 0, 6, 4),
        _ => s(0, 0, 0, 0, 1),
    }
}

impl SizeOverride {
    fn apply(&self, base: SuiteSizes) -> SuiteSizes {
        SuiteSizes {
            sites: self.sites.unwrap_or(base.sites),
            n: self.n.unwrap_or(base.n),
            m: self.m.unwrap_or(base.m),
            total: self.total.unwrap_or(base.total),
            trials: self.trials.unwrap_or(base.trials),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Suites to run; empty means all.
    pub suites: Vec<String>,
    /// Identity ids to keep; empty means all.
    pub identities: Vec<String>,
    pub seed: u64,
    /// The constant `c` as `"p/q"`.
    pub c: String,
    /// Numerators and denominators of sampled rationals stay within this bound.
    pub bound: i64,
    pub sizes: BTreeMap<String, SizeOverride>,
    pub jobs: usize,
    pub report_path: Option<PathBuf>,
    /// Record elapsed times; off by default so reports are reproducible byte for byte.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suites: Vec::new(),
            identities: Vec::new(),
            seed: 1,
            c: "1".into(),
            bound: 12,
            sizes: BTreeMap::new(),
            jobs: 1,
            report_path: None,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("invalid config {}: {e}", path.display())))
    }

    fn selected_suites(&self) -> Result<Vec<&'static str>> {
        if self.suites.is_empty() {
            return Ok(SUITES.to_vec());
        }
        let mut out = Vec::new();
        for name in &self.suites {
            let s = SUITES
                .iter()
                .find(|s| **s == name.as_str())
                .ok_or_else(|| Error::Config(format!("unknown suite {name:?}; known: {}", SUITES.join(", "))))?;
            if !out.contains(s) {
                out.push(*s);
            }
        }
        out.sort_by_key(|s| SUITES.iter().position(|t| t == s));
        Ok(out)
    }

    pub fn sizes_for(&self, suite: &str) -> SuiteSizes {
        let base = default_sizes(suite);
        self.sizes.get(suite).map_or(base, |o| o.apply(base))
    }

    fn validate(&self) -> Result<(Vec<&'static str>, Scalar)> {
        let suites = self.selected_suites()?;
        for key in self.sizes.keys() {
            if !SUITES.contains(&key.as_str()) {
                return Err(Error::Config(format!("size override for unknown suite {key:?}")));
            }
        }
        let c: Scalar = self
            .c
            .parse()
            .map_err(|_| Error::Config(format!("c must be a rational p/q, got {:?}", self.c)))?;
        if c.is_zero() {
            return Err(Error::Config("c must be nonzero".into()));
        }
        if self.bound < 2 {
            return Err(Error::Config(format!("bound must be at least 2, got {}", self.bound)));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        for s in &suites {
            let z = self.sizes_for(s);
            if z.trials == 0 {
                return Err(Error::Config(format!("{s}: trials must be at least 1")));
            }
            if z.sites > MAX_SITES {
                return Err(Error::Config(format!("{s}: at most {MAX_SITES} sites")));
            }
            if z.n.max(z.m).max(z.total) > 16 {
                return Err(Error::Config(format!("{s}: set sizes above 16 are not supported")));
            }
        }
        Ok((suites, c))
    }
}

/// A value compared by a check. Large values are reported by digest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    List(Vec<Scalar>),
    State(Vec<Scalar>),
    Operator(Matrix),
    Coefficients(CoefficientMap),
}

impl Value {
    fn render(&self) -> String {
        fn digest(tag: &str, s: &str) -> String {
            format!("{tag}:{}", hex::encode(Sha256::digest(s.as_bytes())))
        }
        match self {
            Value::Scalar(x) => {
                let s = x.to_string();
                if s.len() > 96 {
                    digest("scalar", &s)
                } else {
                    s
                }
            }
            Value::List(xs) => {
                let s = xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                if s.len() > 96 {
                    digest("list", &s)
                } else {
                    format!("[{s}]")
                }
            }
            Value::State(v) => format!("state:{}", state_digest(v)),
            Value::Operator(m) => format!("operator:{}", m.digest()),
            Value::Coefficients(map) => {
                let mut s = String::new();
                for (k, v) in map.nonzero().iter() {
                    let _ = write!(s, "{k}={v};");
                }
                digest("coefficients", &s)
            }
        }
    }
}

/// Left and right side of one check; it passes when they are equal.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub lhs: Value,
    pub rhs: Value,
}

impl Comparison {
    pub fn new(lhs: Value, rhs: Value) -> Self {
        Comparison { lhs, rhs }
    }

    pub fn scalars(lhs: Scalar, rhs: Scalar) -> Self {
        Comparison::new(Value::Scalar(lhs), Value::Scalar(rhs))
    }

    pub fn states(lhs: Vec<Scalar>, rhs: Vec<Scalar>) -> Self {
        Comparison::new(Value::State(lhs), Value::State(rhs))
    }

    pub fn operators(lhs: Matrix, rhs: Matrix) -> Self {
        Comparison::new(Value::Operator(lhs), Value::Operator(rhs))
    }

    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Seeded parameter source for one task. Every drawn spectral parameter
/// joins a pool, and later draws stay generic against the pool and its
/// `±c` shifts.
pub struct Sampler {
    rng: ChaCha8Rng,
    c: Scalar,
    bound: i64,
    pool: Vec<Scalar>,
    log: Vec<(String, String)>,
}

impl Sampler {
    pub fn new(seed: u64, c: Scalar, bound: i64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            c,
            bound,
            pool: Vec::new(),
            log: Vec::new(),
        }
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    fn note(&mut self, label: &str, value: impl ToString) {
        self.log.push((label.to_string(), value.to_string()));
    }

    pub fn spectral(&mut self, label: &str, count: usize) -> Result<Vec<Scalar>> {
        let mut ctx = Vec::with_capacity(3 * self.pool.len());
        for x in &self.pool {
            ctx.push(x.clone());
            ctx.push(x + &self.c);
            ctx.push(x - &self.c);
        }
        let set = sample_generic(&mut self.rng, label, count, &ctx, self.bound, &self.c)?;
        for (i, x) in set.iter().enumerate() {
            self.note(&format!("{label}[{i}]"), x);
        }
        self.pool.extend(set.iter().cloned());
        Ok(set.elements)
    }

    /// A rational outside `{0, 1}`, for deformation parameters.
    pub fn deformation(&mut self, label: &str) -> Scalar {
        loop {
            let p = self.rng.gen_range(-self.bound..=self.bound);
            let q = self.rng.gen_range(1..=self.bound);
            let z = Scalar::ratio(p, q).expect("positive denominator");
            if !z.is_zero() && !z.is_one() {
                self.note(label, &z);
                return z;
            }
        }
    }

    pub fn twist(&mut self) -> Result<ModelParams> {
        let p = ModelParams::sample(&mut self.rng, &self.c, self.bound)?;
        self.note("rho1", p.rho1());
        self.note("rho2", p.rho2());
        self.note("kappa+", p.kappa_plus());
        self.note("kappa-", p.kappa_minus());
        Ok(p)
    }

    pub fn chain(&mut self, sites: usize) -> Result<Chain> {
        let theta = self.spectral("theta", sites)?;
        Chain::new(theta, self.c.clone())
    }

    pub fn index(&mut self, label: &str, below: usize) -> usize {
        let i = self.rng.gen_range(0..below);
        self.note(label, i);
        i
    }

    pub fn seed(&mut self, label: &str) -> u64 {
        let s = self.rng.gen();
        self.note(label, s);
        s
    }

    fn digest(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.log {
            let _ = write!(s, "{k}={v};");
        }
        hex::encode(&Sha256::digest(s.as_bytes())[..16])
    }
}

/// Sizes a record was produced at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub struct Sizes {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sites: Option<usize>,
    pub n: usize,
    pub m: usize,
}

impl Sizes {
    pub fn nm(n: usize, m: usize) -> Self {
        Sizes { sites: None, n, m }
    }

    pub fn chain(sites: usize, n: usize, m: usize) -> Self {
        Sizes {
            sites: Some(sites),
            n,
            m,
        }
    }
}

type Check = Box<dyn Fn(&mut Sampler) -> Result<Comparison> + Send + Sync>;

pub(crate) struct Task {
    identity: &'static str,
    variant: String,
    sizes: Sizes,
    check: Check,
}

/// Tasks of one suite, in creation order.
pub(crate) struct Plan {
    pub c: Scalar,
    pub sizes: SuiteSizes,
    tasks: Vec<Task>,
}

impl Plan {
    fn new(c: Scalar, sizes: SuiteSizes) -> Self {
        Plan {
            c,
            sizes,
            tasks: Vec::new(),
        }
    }

    /// Adds `trials` copies of a check.
    pub fn add<F>(&mut self, identity: &'static str, variant: impl Into<String>, sizes: Sizes, check: F)
    where
        F: Fn(&mut Sampler) -> Result<Comparison> + Send + Sync + Clone + 'static,
    {
        let variant = variant.into();
        for _ in 0..self.sizes.trials {
            self.tasks.push(Task {
                identity,
                variant: variant.clone(),
                sizes,
                check: Box::new(check.clone()),
            });
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub suite: String,
    pub identity: String,
    pub trial: u32,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub variant: String,
    pub sizes: Sizes,
    pub seed: u64,
    pub params: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub suites: BTreeMap<String, Counts>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub c: String,
    pub bound: i64,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::Config(format!("cannot write report {}: {e}", path.display())))
    }
}

fn task_seed(seed: u64, suite: &str, identity: &str, trial: u32) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(suite.as_bytes());
    h.update([0]);
    h.update(identity.as_bytes());
    h.update([0]);
    h.update(trial.to_le_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

fn build_suite(name: &str, c: Scalar, sizes: SuiteSizes) -> Plan {
    let mut plan = Plan::new(c, sizes);
    match name {
        "izergin-laws" => laws::build(&mut plan),
        "yangian-structure" => structure::build(&mut plan),
        "aba-actions" => actions::build_untwisted(&mut plan),
        "maba-actions" => actions::build_twisted(&mut plan),
        "scalar-products" => scalar_products::build(&mut plan),
        "phi-symmetry" => symmetry::build(&mut plan),
        "proof-steps" => steps::build(&mut plan),
        _ => unreachable!("suite names are validated"),
    }
    plan
}

/// Identity ids a suite registers at the given sizes.
pub fn identities(suite: &str, sizes: SuiteSizes) -> Vec<&'static str> {
    let plan = build_suite(suite, Scalar::one(), sizes);
    let mut ids: Vec<&'static str> = plan.tasks.iter().map(|t| t.identity).collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

/// Runs the selected suites and assembles the report; writes it when the
/// config names a path.
pub fn cmd_verify(config: &RunConfig) -> Result<Report> {
    let (suites, c) = config.validate()?;
    let mut jobs: Vec<(&'static str, u32, Task)> = Vec::new();
    for suite in suites {
        let plan = build_suite(suite, c.clone(), config.sizes_for(suite));
        let mut counters: BTreeMap<&'static str, u32> = BTreeMap::new();
        for task in plan.tasks {
            if !config.identities.is_empty() && !config.identities.iter().any(|i| i == task.identity) {
                continue;
            }
            let trial = counters.entry(task.identity).or_insert(0);
            jobs.push((suite, *trial, task));
            *trial += 1;
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", config.jobs)))?;
    let mut records: Vec<Record> = pool.install(|| {
        jobs.par_iter()
            .map(|(suite, trial, task)| run_task(config, &c, suite, *trial, task))
            .collect()
    });
    records.sort_by(|a, b| {
        let pos = |s: &str| SUITES.iter().position(|t| *t == s);
        (pos(&a.suite), &a.identity, a.trial).cmp(&(pos(&b.suite), &b.identity, b.trial))
    });
    let mut summary = Summary::default();
    for r in &records {
        let counts = summary.suites.entry(r.suite.clone()).or_default();
        summary.total += 1;
        if r.status == Status::Pass {
            summary.passed += 1;
            counts.passed += 1;
        } else {
            summary.failed += 1;
            counts.failed += 1;
        }
    }
    let report = Report {
        seed: config.seed,
        c: c.to_string(),
        bound: config.bound,
        records,
        summary,
    };
    if let Some(path) = &config.report_path {
        report.write(path)?;
    }
    Ok(report)
}

fn run_task(config: &RunConfig, c: &Scalar, suite: &str, trial: u32, task: &Task) -> Record {
    let seed = task_seed(config.seed, suite, task.identity, trial);
    let mut sampler = Sampler::new(seed, c.clone(), config.bound);
    let start = Instant::now();
    let outcome = (task.check)(&mut sampler);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let (status, lhs, rhs, detail) = match outcome {
        Ok(cmp) => {
            let status = if cmp.passed() { Status::Pass } else { Status::Fail };
            (status, cmp.lhs.render(), cmp.rhs.render(), None)
        }
        Err(e) => (Status::Fail, String::new(), String::new(), Some(e.to_string())),
    };
    Record {
        suite: suite.to_string(),
        identity: task.identity.to_string(),
        trial,
        variant: task.variant.clone(),
        sizes: task.sizes,
        seed,
        params: sampler.digest(),
        status,
        lhs,
        rhs,
        detail,
        elapsed_ms: config.timing.then_some(elapsed),
    }
}
