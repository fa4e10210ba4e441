//! Seeded batch execution over a rayon pool.

use rayon::prelude::*;

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::optimizer::{run, RunRecord};

/// Outcome of one repetition of one experiment.
#[derive(Debug, Clone)]
pub struct BatchEntry {
    pub experiment: String,
    pub rep: usize,
    pub seed: u64,
    pub outcome: std::result::Result<RunRecord, Error>,
}

impl BatchEntry {
    pub fn record(&self) -> Option<&RunRecord> {
        self.outcome.as_ref().ok()
    }
}

/// Runs every repetition of every config on `jobs` threads. Entries come
/// back grouped per config in input order, repetitions ascending, whatever
/// the scheduling. A failed run is kept as an error entry.
pub fn run_batch(configs: &[RunConfig], jobs: usize) -> Result<Vec<BatchEntry>> {
    run_batch_with(configs, jobs, run)
}

/// [`run_batch`] with a custom runner, useful for dry runs and tests.
pub fn run_batch_with<F>(configs: &[RunConfig], jobs: usize, runner: F) -> Result<Vec<BatchEntry>>
where
    F: Fn(&crate::optimizer::OptimizerConfig) -> Result<RunRecord> + Sync,
{
    if jobs == 0 {
        return Err(Error::Config("`jobs` must be >= 1".into()));
    }
    let tasks: Vec<(&RunConfig, usize, u64)> = configs
        .iter()
        .flat_map(|c| c.seeds().enumerate().map(move |(rep, seed)| (c, rep, seed)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(|| {
        tasks
            .par_iter()
            .map(|&(c, rep, seed)| {
                let mut cfg = c.optimizer.clone();
                cfg.seed = seed;
                BatchEntry {
                    experiment: c.name.clone(),
                    rep,
                    seed,
                    outcome: runner(&cfg),
                }
            })
            .collect()
    }))
}
