//! Timing of the unconstrained two-part partition sum of the twisted scalar
//! product, with a worker-count sweep.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::Sampler;
use crate::error::{Error, Result};
use crate::formulas::{eval_scalar, ScalarForm, Twist, WeightOracle};
use crate::partition::SplitSpace;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub min_size: usize,
    pub max_size: usize,
    pub jobs: Vec<usize>,
    pub seed: u64,
    pub c: Scalar,
    pub bound: i64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            min_size: 10,
            max_size: 16,
            jobs: vec![1, 2, 4, 8],
            seed: 1,
            c: Scalar::one(),
            bound: 12,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub size: usize,
    pub n: usize,
    pub m: usize,
    pub splits: u64,
    pub expected_splits: u64,
    pub jobs: usize,
    pub seconds: f64,
    pub splits_per_second: f64,
    pub speedup: f64,
    pub value_digest: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Every size produced the same value at every worker count.
    pub identical: bool,
    /// Every enumeration visited exactly `2^(n+m)` splits.
    pub counts_ok: bool,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bench report serializes");
        s.push('\n');
        s
    }
}

/// Value digest used to compare results across worker counts.
pub fn value_digest(x: &Scalar) -> String {
    hex::encode(Sha256::digest(x.to_string().as_bytes()))
}

pub fn cmd_bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.min_size > config.max_size || config.max_size > 20 {
        return Err(Error::Config(format!(
            "bench sizes must satisfy min <= max <= 20, got {}..{}",
            config.min_size, config.max_size
        )));
    }
    if config.jobs.is_empty() || config.jobs.contains(&0) {
        return Err(Error::Config("worker counts must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut identical = true;
    let mut counts_ok = true;
    for size in config.min_size..=config.max_size {
        let (n, m) = (size / 2, size - size / 2);
        let mut s = Sampler::new(config.seed ^ size as u64, config.c.clone(), config.bound);
        let twist = Twist::from_params(&s.twist()?);
        let oracle = WeightOracle::hashed(s.seed("weights"));
        let u = s.spectral("u", n)?;
        let v = s.spectral("v", m)?;
        let space = SplitSpace::two(size);
        let mut first: Option<(String, f64)> = None;
        for &jobs in &config.jobs {
            let visited = AtomicU64::new(0);
            space.sum(jobs, |_| {
                visited.fetch_add(1, Ordering::Relaxed);
                Ok(Scalar::zero())
            })?;
            let splits = visited.into_inner();
            let start = Instant::now();
            let value = eval_scalar(ScalarForm::SPfin, &u, &v, &oracle, &twist, &config.c, jobs)?;
            let seconds = start.elapsed().as_secs_f64();
            let digest = value_digest(&value);
            let base = first.get_or_insert_with(|| (digest.clone(), seconds));
            identical &= base.0 == digest;
            counts_ok &= splits == space.len() && splits == 1u64 << size;
            rows.push(BenchRow {
                size,
                n,
                m,
                splits,
                expected_splits: 1u64 << size,
                jobs,
                seconds,
                splits_per_second: splits as f64 / seconds.max(1e-9),
                speedup: base.1 / seconds.max(1e-9),
                value_digest: digest,
            });
        }
    }
    Ok(BenchReport {
        rows,
        identical,
        counts_ok,
    })
}
