//! Per-cell statistics, ranks and performance scores.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{Algorithm, RunRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    Igd,
    Hv,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Igd, Metric::Hv];

    pub fn lower_is_better(self) -> bool {
        self == Metric::Igd
    }

    fn value(self, r: &RunRecord) -> f64 {
        match self {
            Metric::Igd => r.final_scores.igd,
            Metric::Hv => r.final_scores.hv,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Metric::Igd => "igd",
            Metric::Hv => "hv",
        })
    }
}

/// Label distinguishing instances: the problem name, with the objective
/// count appended for the scalable WFG family.
pub fn problem_label(problem: &str, m: usize) -> String {
    if problem.to_ascii_uppercase().starts_with("WFG") {
        format!("{problem}-{m}obj")
    } else {
        problem.to_string()
    }
}

/// Statistics of one (problem, algorithm, metric) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub problem: String,
    pub algorithm: Algorithm,
    pub metric: Metric,
    pub values: Vec<f64>,
    pub mean: f64,
    /// Population standard deviation (divisor n).
    pub std: f64,
    /// Rank of the mean among the problem's algorithms, 1 = best.
    pub rank: usize,
}

/// Sum of per-problem ranks for one algorithm and metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Total {
    pub algorithm: Algorithm,
    pub metric: Metric,
    pub total_rank: usize,
    pub final_rank: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    /// Grouped by metric, then problem, then algorithm, each in order of
    /// first appearance.
    pub cells: Vec<Cell>,
    pub totals: Vec<Total>,
}

pub fn mean_std(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::Contract("empty cell".into()));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok((mean, var.sqrt()))
}

/// 1-based ranks of `means`; ties keep their listed order.
pub fn rank_by(means: &[f64], lower_is_better: bool) -> Vec<usize> {
    let mut order: Vec<usize> = (0..means.len()).collect();
    order.sort_by(|&a, &b| {
        let c = means[a].total_cmp(&means[b]);
        if lower_is_better {
            c
        } else {
            c.reverse()
        }
    });
    let mut ranks = vec![0; means.len()];
    for (r, i) in order.into_iter().enumerate() {
        ranks[i] = r + 1;
    }
    ranks
}

fn first_seen<T: PartialEq + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for it in items {
        if !out.contains(&it) {
            out.push(it);
        }
    }
    out
}

pub fn aggregate(records: &[&RunRecord]) -> Result<ResultTable> {
    let label = |r: &RunRecord| problem_label(&r.config.problem, r.config.m);
    let problems = first_seen(records.iter().map(|r| label(r)));
    let algorithms = first_seen(records.iter().map(|r| r.config.algorithm));
    let mut table = ResultTable::default();
    for metric in Metric::ALL {
        let mut totals = vec![0usize; algorithms.len()];
        for problem in &problems {
            let mut cells = Vec::new();
            for &algorithm in &algorithms {
                let values: Vec<f64> = records
                    .iter()
                    .filter(|r| r.config.algorithm == algorithm && &label(r) == problem)
                    .map(|r| metric.value(r))
                    .collect();
                if values.is_empty() {
                    continue;
                }
                let (mean, std) = mean_std(&values)?;
                cells.push(Cell {
                    problem: problem.clone(),
                    algorithm,
                    metric,
                    values,
                    mean,
                    std,
                    rank: 0,
                });
            }
            let means: Vec<f64> = cells.iter().map(|c| c.mean).collect();
            for (c, r) in cells
                .iter_mut()
                .zip(rank_by(&means, metric.lower_is_better()))
            {
                c.rank = r;
                let a = algorithms
                    .iter()
                    .position(|&x| x == c.algorithm)
                    .expect("listed");
                totals[a] += r;
            }
            table.cells.extend(cells);
        }
        let as_f64: Vec<f64> = totals.iter().map(|&t| t as f64).collect();
        for ((&algorithm, &total_rank), final_rank) in
            algorithms.iter().zip(&totals).zip(rank_by(&as_f64, true))
        {
            table.totals.push(Total {
                algorithm,
                metric,
                total_rank,
                final_rank,
            });
        }
    }
    Ok(table)
}

/// `P(A_i)`: how many other algorithms outperform `A_i`. `beaten[i][j]`
/// says whether `A_i` is outperformed by `A_j`.
pub fn performance_score(beaten: &[Vec<bool>]) -> Result<Vec<usize>> {
    let k = beaten.len();
    for (i, row) in beaten.iter().enumerate() {
        if row.len() != k {
            return Err(Error::Dimension {
                expected: k,
                actual: row.len(),
            });
        }
        if row[i] {
            return Err(Error::Contract(format!(
                "algorithm {i} cannot outperform itself"
            )));
        }
    }
    Ok(beaten
        .iter()
        .map(|row| row.iter().filter(|&&b| b).count())
        .collect())
}

/// Outperformance matrix for cells of one problem and metric, judged by the
/// gap between means exceeding the sum of standard deviations. This is a
/// heuristic, not a significance test.
pub fn outperform_by_mean(cells: &[&Cell]) -> Vec<Vec<bool>> {
    cells
        .iter()
        .map(|a| {
            cells
                .iter()
                .map(|b| {
                    let gap = if a.metric.lower_is_better() {
                        a.mean - b.mean
                    } else {
                        b.mean - a.mean
                    };
                    gap > a.std + b.std
                })
                .collect()
        })
        .collect()
}
