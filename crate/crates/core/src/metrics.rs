//! IGD and hypervolume, plus the affine normalization applied to WFG fronts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::{ProblemInstance, Suite};

/// Reference point and estimation settings for one problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricConfig {
    pub reference_point: Vec<f64>,
    /// Map objectives through the PF's per-objective range before scoring.
    pub normalize: bool,
    pub mc_samples: usize,
    pub mc_seed: u64,
}

impl MetricConfig {
    /// `z^r = (1.2, ..., 1.2)`; WFG objectives are normalized first.
    pub fn for_problem(problem: &ProblemInstance) -> Self {
        Self {
            reference_point: vec![1.2; problem.m()],
            normalize: problem.suite() == Suite::Wfg,
            mc_samples: 1_000_000,
            mc_seed: 0x5eed,
        }
    }
}

fn check_dims(points: &[Vec<f64>], m: usize) -> Result<()> {
    for p in points {
        if p.len() != m {
            return Err(Error::Dimension {
                expected: m,
                actual: p.len(),
            });
        }
    }
    Ok(())
}

/// Mean distance from each reference point to its nearest member of `p`.
pub fn igd(p: &[Vec<f64>], reference: &[Vec<f64>]) -> Result<f64> {
    if p.is_empty() || reference.is_empty() {
        return Err(Error::Metric("IGD needs non-empty sets".into()));
    }
    check_dims(p, reference[0].len())?;
    check_dims(reference, reference[0].len())?;
    let total: f64 = reference
        .iter()
        .map(|z| {
            p.iter()
                .map(|x| x.iter().zip(z).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .sum();
    Ok(total / reference.len() as f64)
}

/// Per-objective minimum and maximum of a set.
pub fn bounds_of(points: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<f64>)> {
    let first = points
        .first()
        .ok_or_else(|| Error::Metric("cannot take bounds of an empty set".into()))?;
    check_dims(points, first.len())?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in points {
        for (i, v) in p.iter().enumerate() {
            lo[i] = lo[i].min(*v);
            hi[i] = hi[i].max(*v);
        }
    }
    Ok((lo, hi))
}

/// Affine map sending `lo` to 0 and `hi` to 1 per objective; zero-range
/// objectives map to 0. Values are not clamped.
pub fn normalize_for_metrics(points: &[Vec<f64>], lo: &[f64], hi: &[f64]) -> Result<Vec<Vec<f64>>> {
    check_dims(points, lo.len())?;
    if hi.len() != lo.len() {
        return Err(Error::Dimension {
            expected: lo.len(),
            actual: hi.len(),
        });
    }
    Ok(points
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(i, v)| {
                    let range = hi[i] - lo[i];
                    if range > 0.0 {
                        (v - lo[i]) / range
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect())
}

/// Hypervolume dominated by `points` and bounded by `zr`; exact for up to
/// three objectives, Monte Carlo (default sample count and seed) beyond.
pub fn hv(points: &[Vec<f64>], zr: &[f64]) -> Result<f64> {
    hv_with(points, zr, 1_000_000, 0x5eed)
}

pub fn hv_with(points: &[Vec<f64>], zr: &[f64], mc_samples: usize, mc_seed: u64) -> Result<f64> {
    check_dims(points, zr.len())?;
    let inside: Vec<&[f64]> = points
        .iter()
        .filter(|p| p.iter().zip(zr).all(|(a, r)| a < r))
        .map(Vec::as_slice)
        .collect();
    if inside.is_empty() {
        return Ok(0.0);
    }
    Ok(match zr.len() {
        1 => zr[0] - inside.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min),
        2 => hv2(
            inside.iter().map(|p| [p[0], p[1]]).collect(),
            [zr[0], zr[1]],
        ),
        3 => hv3(&inside, zr),
        _ => hv_monte_carlo(&inside, zr, mc_samples, mc_seed).0,
    })
}

fn hv2(mut pts: Vec<[f64; 2]>, zr: [f64; 2]) -> f64 {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = zr[1];
    for p in pts {
        if p[1] < ceiling {
            area += (zr[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    area
}

fn hv3(pts: &[&[f64]], zr: &[f64]) -> f64 {
    let mut order: Vec<&[f64]> = pts.to_vec();
    order.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut volume = 0.0;
    let mut slice: Vec<[f64; 2]> = Vec::with_capacity(order.len());
    for (i, p) in order.iter().enumerate() {
        slice.push([p[0], p[1]]);
        let top = order.get(i + 1).map_or(zr[2], |q| q[2]);
        if top > p[2] {
            volume += hv2(slice.clone(), [zr[0], zr[1]]) * (top - p[2]);
        }
    }
    volume
}

/// Monte Carlo hypervolume in any dimension, returned with its standard
/// error. Samples are drawn in the box spanned by the per-objective minimum
/// and `zr`.
pub fn hv_estimate(
    points: &[Vec<f64>],
    zr: &[f64],
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    check_dims(points, zr.len())?;
    let inside: Vec<&[f64]> = points
        .iter()
        .filter(|p| p.iter().zip(zr).all(|(a, r)| a < r))
        .map(Vec::as_slice)
        .collect();
    if inside.is_empty() {
        return Ok((0.0, 0.0));
    }
    Ok(hv_monte_carlo(&inside, zr, samples, seed))
}

fn hv_monte_carlo(pts: &[&[f64]], zr: &[f64], samples: usize, seed: u64) -> (f64, f64) {
    let m = zr.len();
    let lo: Vec<f64> = (0..m)
        .map(|i| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min))
        .collect();
    let box_volume: f64 = lo.iter().zip(zr).map(|(l, r)| r - l).product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for i in 0..m {
            sample[i] = lo[i] + rng.gen::<f64>() * (zr[i] - lo[i]);
        }
        if pts
            .iter()
            .any(|p| p.iter().zip(&sample).all(|(a, s)| a <= s))
        {
            hits += 1;
        }
    }
    let n = samples.max(1) as f64;
    let frac = hits as f64 / n;
    (
        box_volume * frac,
        box_volume * (frac * (1.0 - frac) / n).sqrt(),
    )
}

/// IGD and HV of one final population.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub igd: f64,
    pub hv: f64,
}

/// Scores `objectives` against the problem's cached reference front.
pub fn score(
    problem: &ProblemInstance,
    objectives: &[Vec<f64>],
    cfg: &MetricConfig,
) -> Result<Scores> {
    let pf = problem.reference_front();
    score_against(objectives, &pf.points, cfg)
}

pub fn score_against(
    objectives: &[Vec<f64>],
    pf: &[Vec<f64>],
    cfg: &MetricConfig,
) -> Result<Scores> {
    if cfg.normalize {
        let (lo, hi) = bounds_of(pf)?;
        let p = normalize_for_metrics(objectives, &lo, &hi)?;
        let front = normalize_for_metrics(pf, &lo, &hi)?;
        Ok(Scores {
            igd: igd(&p, &front)?,
            hv: hv_with(&p, &cfg.reference_point, cfg.mc_samples, cfg.mc_seed)?,
        })
    } else {
        Ok(Scores {
            igd: igd(objectives, pf)?,
            hv: hv_with(
                objectives,
                &cfg.reference_point,
                cfg.mc_samples,
                cfg.mc_seed,
            )?,
        })
    }
}
