//! Benchmark instances, their Pareto fronts, and Pareto dominance.
//!
//! Formula notes:
//! * UF: CEC 2009 report definitions, `n = 30`. UF5 uses `N = 10, ε = 0.1`,
//!   UF6 `N = 2, ε = 0.1`, UF9 `ε = 0.1`.
//! * MOP: `n = 10`, unit box; the distance function of MOP1/MOP5/MOP6/MOP7 is
//!   `Σ(-0.9t² + |t|^0.6)` and of MOP2-MOP4 `Σ|t|/(1+e^{5|t|})`.
//! * WFG: `k = 2, l = 4` for two objectives, `k = 2(m-1), l = 20` otherwise.

mod front;
mod mop;
mod uf;
pub(crate) mod wfg;

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Benchmark family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    Uf,
    Mop,
    Wfg,
}

/// A configured benchmark instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    suite: Suite,
    id: u8,
    m: usize,
    n: usize,
    wfg_k: Option<usize>,
    wfg_l: Option<usize>,
    bounds: Vec<(f64, f64)>,
}

fn parse_name(name: &str) -> Result<(Suite, u8)> {
    let upper = name.trim().to_ascii_uppercase();
    let (suite, rest, max) = if let Some(r) = upper.strip_prefix("UF") {
        (Suite::Uf, r, 10)
    } else if let Some(r) = upper.strip_prefix("MOP") {
        (Suite::Mop, r, 7)
    } else if let Some(r) = upper.strip_prefix("WFG") {
        (Suite::Wfg, r, 9)
    } else {
        return Err(Error::UnknownProblem(name.to_string()));
    };
    match rest.parse::<u8>() {
        Ok(id) if (1..=max).contains(&id) => Ok((suite, id)),
        _ => Err(Error::UnknownProblem(name.to_string())),
    }
}

/// Objective count a UF/MOP instance is defined for; `None` for WFG.
pub fn native_objectives(name: &str) -> Result<Option<usize>> {
    Ok(match parse_name(name)? {
        (Suite::Uf, id) => Some(uf::objectives(id)),
        (Suite::Mop, id) => Some(mop::objectives(id)),
        (Suite::Wfg, _) => None,
    })
}

impl ProblemInstance {
    /// Instance with the suite's default sizes. UF and MOP instances only
    /// accept their native objective count.
    pub fn new(name: &str, m: usize) -> Result<Self> {
        let (suite, id) = parse_name(name)?;
        match suite {
            Suite::Uf | Suite::Mop => {
                let native = native_objectives(name)?.expect("UF/MOP are fixed");
                if m != native {
                    return Err(Error::Config(format!(
                        "{name} is defined for {native} objectives, not {m}"
                    )));
                }
                let (n, bounds) = if suite == Suite::Uf {
                    (30, uf::bounds(id, 30))
                } else {
                    (10, vec![(0.0, 1.0); 10])
                };
                Ok(Self {
                    suite,
                    id,
                    m,
                    n,
                    wfg_k: None,
                    wfg_l: None,
                    bounds,
                })
            }
            Suite::Wfg => {
                let (k, l) = if m == 2 {
                    (2, 4)
                } else {
                    (2 * m.saturating_sub(1), 20)
                };
                Self::wfg(id, m, k, l)
            }
        }
    }

    /// WFG instance with explicit position and distance counts.
    pub fn wfg(id: u8, m: usize, k: usize, l: usize) -> Result<Self> {
        if !(1..=9).contains(&id) {
            return Err(Error::UnknownProblem(format!("WFG{id}")));
        }
        if m < 2 || k == 0 || l == 0 || !k.is_multiple_of(m - 1) {
            return Err(Error::Config(format!(
                "WFG needs m >= 2 and k divisible by m-1 (m={m}, k={k}, l={l})"
            )));
        }
        if matches!(id, 2 | 3) && !l.is_multiple_of(2) {
            return Err(Error::Config(format!("WFG{id} needs an even l, got {l}")));
        }
        let n = k + l;
        Ok(Self {
            suite: Suite::Wfg,
            id,
            m,
            n,
            wfg_k: Some(k),
            wfg_l: Some(l),
            bounds: (1..=n).map(|i| (0.0, 2.0 * i as f64)).collect(),
        })
    }

    pub fn name(&self) -> String {
        let prefix = match self.suite {
            Suite::Uf => "UF",
            Suite::Mop => "MOP",
            Suite::Wfg => "WFG",
        };
        format!("{prefix}{}", self.id)
    }

    pub fn suite(&self) -> Suite {
        self.suite
    }

    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn wfg_k(&self) -> Option<usize> {
        self.wfg_k
    }

    pub fn wfg_l(&self) -> Option<usize> {
        self.wfg_l
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Objective vector of `x`; errors when `x` has the wrong length or
    /// leaves the box.
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: x.len(),
            });
        }
        for (i, (v, &(lo, hi))) in x.iter().zip(&self.bounds).enumerate() {
            if !(lo..=hi).contains(v) {
                return Err(Error::Contract(format!(
                    "x[{i}] = {v} outside [{lo}, {hi}] for {}",
                    self.name()
                )));
            }
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64> {
        match self.suite {
            Suite::Uf => uf::evaluate(self.id, x),
            Suite::Mop => mop::evaluate(self.id, x),
            Suite::Wfg => wfg::evaluate(self.id, self.m, self.wfg_k.expect("wfg"), x),
        }
    }

    /// Point of the Pareto set generated from free parameters in `[0,1]`.
    /// UF/MOP take `m - 1` parameters, WFG1-WFG7 take `k`. `None` where the
    /// optimal set has no closed form here (WFG8, WFG9).
    pub fn pareto_set_point(&self, free: &[f64]) -> Option<Vec<f64>> {
        match self.suite {
            Suite::Uf => Some(uf::pareto_set_point(self.id, self.n, free)),
            Suite::Mop => Some(mop::pareto_set_point(self.id, self.n, free)),
            Suite::Wfg => wfg::pareto_set_point(self.id, self.wfg_k?, self.wfg_l?, free),
        }
    }

    /// `count` points spread over the analytic Pareto front.
    pub fn sample_pf(&self, count: usize) -> Result<ParetoFrontSample> {
        if count == 0 {
            return Err(Error::Contract("PF sample size must be >= 1".into()));
        }
        Ok(ParetoFrontSample {
            points: front::sample(self, count),
        })
    }

    /// Cached front used for metrics: 1,000 points for two objectives and up
    /// to 10,000 otherwise.
    pub fn reference_front(&self) -> Arc<ParetoFrontSample> {
        static CACHE: OnceLock<Mutex<HashMap<String, Arc<ParetoFrontSample>>>> = OnceLock::new();
        let key = format!(
            "{}:{}:{:?}:{:?}",
            self.name(),
            self.m,
            self.wfg_k,
            self.wfg_l
        );
        let cache = CACHE.get_or_init(Default::default);
        if let Some(hit) = cache.lock().expect("pf cache").get(&key) {
            return hit.clone();
        }
        let count = if self.m == 2 { 1000 } else { 10_000 };
        let pf = Arc::new(self.sample_pf(count).expect("count > 0"));
        cache
            .lock()
            .expect("pf cache")
            .entry(key)
            .or_insert(pf)
            .clone()
    }
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m={}, n={})", self.name(), self.m, self.n)
    }
}

/// Points on a true Pareto front.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParetoFrontSample {
    pub points: Vec<Vec<f64>>,
}

impl ParetoFrontSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One point per line, comma-separated objectives.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_points(path, &self.points)
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        Ok(Self {
            points: read_points(path)?,
        })
    }
}

pub(crate) fn format_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// One comma-separated row per point, numbers in shortest round-trip form.
pub fn write_points(path: &Path, points: &[Vec<f64>]) -> Result<()> {
    let file =
        std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut out = std::io::BufWriter::new(file);
    for p in points {
        writeln!(out, "{}", format_row(p))?;
    }
    out.flush()?;
    Ok(())
}

/// Reads comma-separated rows of numbers, skipping blank lines and lines
/// starting with `#`.
pub fn read_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    let file =
        std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut points = Vec::new();
    for (no, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), no + 1)))?;
        if let Some(first) = points.first() {
            let first: &Vec<f64> = first;
            if first.len() != row.len() {
                return Err(Error::Parse(format!(
                    "{}:{}: expected {} columns, found {}",
                    path.display(),
                    no + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        points.push(row);
    }
    Ok(points)
}

/// `a` Pareto-dominates `b` (minimization).
///
/// # Panics
/// When the lengths differ; see [`try_dominates`] for a checked form.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "dominance needs equal-length vectors");
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

pub fn try_dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(dominates(a, b))
}

/// Indices of the mutually non-dominated points (first occurrence kept for
/// duplicates).
pub fn nondominated_indices(points: &[Vec<f64>]) -> Vec<usize> {
    let mut keep = Vec::new();
    'outer: for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if dominates(q, p) || (j < i && q == p) {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    keep
}
