//! Experiment configuration from command-line flags or a TOML file with one
//! table per experiment.

use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::optimizer::{Algorithm, OperatorOverrides, OptimizerConfig};
use crate::problems::native_objectives;

pub const DEFAULT_REPS: usize = 11;

/// One experiment: an optimizer configuration repeated `reps` times with
/// seeds `seed, seed + 1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub name: String,
    pub optimizer: OptimizerConfig,
    pub reps: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.reps as u64).map(move |r| self.optimizer.seed.wrapping_add(r))
    }
}

/// Flat experiment description shared by flags and config-file sections.
/// Absent values take the instance defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub problem: Option<String>,
    pub m: Option<usize>,
    pub algo: Option<String>,
    pub pop: Option<usize>,
    pub evals: Option<usize>,
    pub seed: Option<u64>,
    pub reps: Option<usize>,
    pub out: Option<PathBuf>,
    pub checkpoint_every: Option<usize>,
    pub wfg_k: Option<usize>,
    pub wfg_l: Option<usize>,
    pub neighborhood_size: Option<usize>,
    pub delta: Option<f64>,
    pub ell_max: Option<usize>,
    pub utility_period: Option<usize>,
    pub cr: Option<f64>,
    pub f: Option<f64>,
    pub pc: Option<f64>,
    pub eta_c: Option<f64>,
    pub pm: Option<f64>,
    pub eta_m: Option<f64>,
}

impl ExperimentSpec {
    /// Fills defaults and validates.
    pub fn resolve(&self, name: &str) -> Result<RunConfig> {
        let problem = self
            .problem
            .as_deref()
            .ok_or_else(|| Error::Config(format!("experiment `{name}`: `problem` is required")))?;
        let native = native_objectives(problem)?;
        let m = match (self.m, native) {
            (Some(m), Some(fixed)) if m != fixed => {
                return Err(Error::Config(format!(
                    "{problem} has {fixed} objectives, not {m}"
                )));
            }
            (Some(m), _) => m,
            (None, Some(fixed)) => fixed,
            (None, None) => 2,
        };
        let algorithm: Algorithm = self.algo.as_deref().unwrap_or("aoostm").parse()?;
        let mut cfg = OptimizerConfig::new(problem, m, algorithm, self.seed.unwrap_or(1))?;
        if let (Some(_), None) | (None, Some(_)) = (self.wfg_k, self.wfg_l) {
            return Err(Error::Config(
                "`wfg_k` and `wfg_l` must be given together".into(),
            ));
        }
        if self.wfg_k.is_some() {
            cfg.wfg_k = self.wfg_k;
            cfg.wfg_l = self.wfg_l;
        }
        if let Some(pop) = self.pop {
            cfg.pop_size = pop;
            if self.evals.is_none() {
                cfg.budget = crate::optimizer::default_budget(&cfg.instance()?, pop);
            }
        }
        if let Some(evals) = self.evals {
            cfg.budget = evals;
        }
        cfg.checkpoint_every = self.checkpoint_every;
        cfg.neighborhood_size = self.neighborhood_size.unwrap_or(cfg.neighborhood_size);
        cfg.delta = self.delta.unwrap_or(cfg.delta);
        cfg.ell_max = self.ell_max.unwrap_or(cfg.ell_max);
        cfg.utility_period = self.utility_period.unwrap_or(cfg.utility_period);
        cfg.operators = OperatorOverrides {
            cr: self.cr,
            f: self.f,
            pc: self.pc,
            eta_c: self.eta_c,
            pm: self.pm,
            eta_m: self.eta_m,
        };
        cfg.validate()?;
        let reps = self.reps.unwrap_or(DEFAULT_REPS);
        if reps == 0 {
            return Err(Error::Config("`reps` must be >= 1".into()));
        }
        Ok(RunConfig {
            name: name.to_string(),
            optimizer: cfg,
            reps,
            out: self.out.clone(),
        })
    }
}

/// Parses a TOML document whose top-level tables are experiments, in
/// document order.
pub fn parse_config(text: &str) -> Result<Vec<RunConfig>> {
    let doc: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
    let mut out = Vec::with_capacity(doc.len());
    for (name, value) in doc {
        let table = value
            .as_table()
            .ok_or_else(|| Error::Config(format!("`{name}` must be a [section]")))?;
        let spec: ExperimentSpec =
            toml::Value::Table(table.clone())
                .try_into()
                .map_err(|e: toml::de::Error| {
                    Error::Config(format!("experiment `{name}`: {}", e.message()))
                })?;
        out.push(spec.resolve(&name)?);
    }
    if out.is_empty() {
        return Err(Error::Config("no experiments defined".into()));
    }
    Ok(out)
}
