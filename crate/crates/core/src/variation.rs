//! Offspring operators: DE/rand/1 with binomial crossover, simulated binary
//! crossover and polynomial mutation. Every output is clipped into the box.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::{ProblemInstance, Suite};

/// Recombination operator applied before mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recombination {
    De,
    Sbx,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationParams {
    pub recombination: Recombination,
    pub cr: f64,
    pub f: f64,
    pub pc: f64,
    pub eta_c: f64,
    pub pm: f64,
    pub eta_m: f64,
    pub bounds: Vec<(f64, f64)>,
}

impl VariationParams {
    /// Operator settings used for each suite: DE for UF, MOP and WFG with up
    /// to three objectives, SBX for WFG with more than three.
    pub fn for_problem(problem: &ProblemInstance) -> Self {
        let n = problem.n();
        let (recombination, cr) = match (problem.suite(), problem.m()) {
            (Suite::Wfg, 2 | 3) => (Recombination::De, 0.5),
            (Suite::Wfg, _) => (Recombination::Sbx, 1.0),
            _ => (Recombination::De, 1.0),
        };
        Self {
            recombination,
            cr,
            f: 0.5,
            pc: 1.0,
            eta_c: 30.0,
            pm: 1.0 / n as f64,
            eta_m: 20.0,
            bounds: problem.bounds().to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} = {v} is not a probability")))
            }
        };
        prob("CR", self.cr)?;
        prob("p_c", self.pc)?;
        prob("p_m", self.pm)?;
        if !(0.0..=2.0).contains(&self.f) {
            return Err(Error::Config(format!("F = {} outside [0, 2]", self.f)));
        }
        if self.eta_c <= 0.0 || self.eta_m <= 0.0 {
            return Err(Error::Config(
                "distribution indices must be positive".into(),
            ));
        }
        if self
            .bounds
            .iter()
            .any(|&(lo, hi)| !(lo < hi) || !lo.is_finite() || !hi.is_finite())
        {
            return Err(Error::Config(
                "bounds must be finite with lower < upper".into(),
            ));
        }
        Ok(())
    }

    fn check_dim(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.bounds.len() {
            return Err(Error::Dimension {
                expected: self.bounds.len(),
                actual: v.len(),
            });
        }
        Ok(())
    }
}

fn clip(v: f64, (lo, hi): (f64, f64)) -> f64 {
    v.clamp(lo, hi)
}

/// `base + F (r2 - r3)` crossed binomially with `base`; at least one
/// coordinate comes from the mutant.
pub fn de_rand_1<R: Rng + ?Sized>(
    base: &[f64],
    r2: &[f64],
    r3: &[f64],
    params: &VariationParams,
    rng: &mut R,
) -> Result<Vec<f64>> {
    params.check_dim(base)?;
    params.check_dim(r2)?;
    params.check_dim(r3)?;
    let n = base.len();
    let forced = rng.gen_range(0..n);
    Ok((0..n)
        .map(|j| {
            let take = rng.gen::<f64>() < params.cr || j == forced;
            let v = if take {
                base[j] + params.f * (r2[j] - r3[j])
            } else {
                base[j]
            };
            clip(v, params.bounds[j])
        })
        .collect())
}

/// Simulated binary crossover. With probability `p_c` each coordinate is
/// recombined with probability 0.5 using one spread-factor draw.
pub fn sbx<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    params: &VariationParams,
    rng: &mut R,
) -> Result<(Vec<f64>, Vec<f64>)> {
    params.check_dim(p1)?;
    params.check_dim(p2)?;
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.gen::<f64>() >= params.pc {
        return Ok((c1, c2));
    }
    let expo = 1.0 / (params.eta_c + 1.0);
    for j in 0..p1.len() {
        if rng.gen::<f64>() > 0.5 || (p1[j] - p2[j]).abs() <= 1e-14 {
            continue;
        }
        let u: f64 = rng.gen();
        let beta = if u <= 0.5 {
            (2.0 * u).powf(expo)
        } else {
            (1.0 / (2.0 * (1.0 - u))).powf(expo)
        };
        let (a, b) = (p1[j], p2[j]);
        c1[j] = clip(
            0.5 * ((1.0 + beta) * a + (1.0 - beta) * b),
            params.bounds[j],
        );
        c2[j] = clip(
            0.5 * ((1.0 - beta) * a + (1.0 + beta) * b),
            params.bounds[j],
        );
    }
    Ok((c1, c2))
}

/// Bounded polynomial mutation.
pub fn poly_mutation<R: Rng + ?Sized>(
    x: &[f64],
    params: &VariationParams,
    rng: &mut R,
) -> Result<Vec<f64>> {
    params.check_dim(x)?;
    let expo = 1.0 / (params.eta_m + 1.0);
    Ok(x.iter()
        .zip(&params.bounds)
        .map(|(&y, &(lo, hi))| {
            if rng.gen::<f64>() >= params.pm {
                return y;
            }
            let width = hi - lo;
            let r: f64 = rng.gen();
            let dq = if r < 0.5 {
                let xy = 1.0 - (y - lo) / width;
                let val = 2.0 * r + (1.0 - 2.0 * r) * xy.powf(params.eta_m + 1.0);
                val.powf(expo) - 1.0
            } else {
                let xy = 1.0 - (hi - y) / width;
                let val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * xy.powf(params.eta_m + 1.0);
                1.0 - val.powf(expo)
            };
            clip(y + dq * width, (lo, hi))
        })
        .collect())
}
