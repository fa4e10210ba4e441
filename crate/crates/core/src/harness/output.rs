//! CSV emission: summary table, per-run rows, final populations and fronts.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::aggregate::{problem_label, ResultTable};
use super::batch::BatchEntry;
use crate::error::{Error, Result};
use crate::optimizer::{OptimizerConfig, RunRecord};
use crate::problems::write_points;

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Short SHA-256 of the configuration with the seed zeroed, so that the
/// repetitions of one experiment share a hash.
pub fn config_hash(config: &OptimizerConfig) -> String {
    let mut c = config.clone();
    c.seed = 0;
    let json = serde_json::to_vec(&c).expect("config serializes");
    Sha256::digest(&json)[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn plot_file_name(record: &RunRecord) -> String {
    format!(
        "{}_{}_{}.csv",
        problem_label(&record.config.problem, record.config.m),
        record.config.algorithm,
        record.seed
    )
}

/// Final-population objectives of one run, one point per line.
pub fn write_plot(record: &RunRecord, dir: &Path) -> Result<()> {
    let objs: Vec<Vec<f64>> = record.population.iter().map(|i| i.f.clone()).collect();
    write_points(&dir.join(plot_file_name(record)), &objs)
}

pub fn write_summary(table: &ResultTable, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record([
        "problem",
        "algorithm",
        "metric",
        "mean",
        "std",
        "rank",
        "runs",
    ])
    .map_err(csv_err)?;
    for c in &table.cells {
        w.write_record([
            c.problem.clone(),
            c.algorithm.to_string(),
            c.metric.to_string(),
            c.mean.to_string(),
            c.std.to_string(),
            c.rank.to_string(),
            c.values.len().to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_runs(entries: &[BatchEntry], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record([
        "experiment",
        "config_hash",
        "problem",
        "algorithm",
        "seed",
        "igd",
        "hv",
        "wall_ms",
        "error",
    ])
    .map_err(csv_err)?;
    for e in entries {
        let row = match &e.outcome {
            Ok(r) => [
                e.experiment.clone(),
                config_hash(&r.config),
                problem_label(&r.config.problem, r.config.m),
                r.config.algorithm.to_string(),
                e.seed.to_string(),
                r.final_scores.igd.to_string(),
                r.final_scores.hv.to_string(),
                r.wall_ms.to_string(),
                String::new(),
            ],
            Err(err) => [
                e.experiment.clone(),
                String::new(),
                String::new(),
                String::new(),
                e.seed.to_string(),
                String::new(),
                String::new(),
                String::new(),
                err.to_string(),
            ],
        };
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Metric trace of every run: one row per checkpoint.
pub fn write_checkpoints(entries: &[BatchEntry], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["experiment", "seed", "neval", "igd", "hv"])
        .map_err(csv_err)?;
    for e in entries {
        for c in e.record().map_or(&[][..], |r| &r.checkpoints) {
            w.write_record([
                e.experiment.clone(),
                e.seed.to_string(),
                c.neval.to_string(),
                c.igd.to_string(),
                c.hv.to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes `summary.csv`, `runs.csv`, `checkpoints.csv`, `plot/` and `pf/`
/// under `out_dir`.
pub fn emit_results(table: &ResultTable, entries: &[BatchEntry], out_dir: &Path) -> Result<()> {
    let plot = out_dir.join("plot");
    let pf = out_dir.join("pf");
    for d in [out_dir, &plot, &pf] {
        fs::create_dir_all(d).map_err(|e| Error::Io(format!("{}: {e}", d.display())))?;
    }
    write_summary(table, &out_dir.join("summary.csv"))?;
    write_runs(entries, &out_dir.join("runs.csv"))?;
    write_checkpoints(entries, &out_dir.join("checkpoints.csv"))?;
    let mut fronts: Vec<String> = Vec::new();
    for r in entries.iter().filter_map(BatchEntry::record) {
        write_plot(r, &plot)?;
        let label = problem_label(&r.config.problem, r.config.m);
        if !fronts.contains(&label) {
            let front = r.config.instance()?.reference_front();
            front.write_csv(&pf.join(format!("{label}.csv")))?;
            fronts.push(label);
        }
    }
    Ok(())
}
