//! Weight vectors, neighborhoods, scalarizing functions and objective
//! normalization.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};

/// Lower bound applied to weight components used as divisors.
pub const WEIGHT_FLOOR: f64 = 1e-6;

/// Shrink factor applied to every inner layer of a multi-layer weight set.
pub const INNER_LAYER_SHRINK: f64 = 0.5;

/// All points of the simplex lattice with denominator `h` in `m` dimensions,
/// in lexicographic order of the first `m - 1` numerators.
pub fn simplex_lattice(m: usize, h: usize) -> Vec<Vec<f64>> {
    fn recurse(m: usize, left: usize, h: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if prefix.len() == m - 1 {
            let mut w: Vec<f64> = prefix.iter().map(|&k| k as f64 / h as f64).collect();
            w.push(left as f64 / h as f64);
            out.push(w);
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            recurse(m, left - k, h, prefix, out);
            prefix.pop();
        }
    }
    if h == 0 {
        return vec![vec![1.0 / m as f64; m]];
    }
    let mut out = Vec::new();
    recurse(m, h, h, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Number of simplex-lattice points, C(h + m - 1, m - 1).
pub fn lattice_size(m: usize, h: usize) -> usize {
    let k = m - 1;
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (h + k - i) as u128 / (i + 1) as u128;
    }
    c as usize
}

/// Uniform weight vectors. One entry in `layers` gives a plain simplex
/// lattice; further entries are extra lattices shrunk halfway toward the
/// centroid and appended.
pub fn generate_weights(m: usize, layers: &[usize]) -> Result<Vec<Vec<f64>>> {
    if m < 2 {
        return Err(Error::Config(format!(
            "need at least 2 objectives, got {m}"
        )));
    }
    if layers.is_empty() || layers.contains(&0) {
        return Err(Error::Config(
            "every lattice resolution must be >= 1".into(),
        ));
    }
    let centroid = 1.0 / m as f64;
    let mut out = Vec::new();
    for (i, &h) in layers.iter().enumerate() {
        let layer = simplex_lattice(m, h);
        if i == 0 {
            out.extend(layer);
        } else {
            out.extend(layer.into_iter().map(|w| {
                w.into_iter()
                    .map(|v| (1.0 - INNER_LAYER_SHRINK) * centroid + INNER_LAYER_SHRINK * v)
                    .collect()
            }));
        }
    }
    Ok(out)
}

/// Uniform point on the unit simplex (normalized exponential draws).
pub fn random_simplex_point<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    let e: Vec<f64> = (0..m).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

/// Weight set of exactly `n` vectors for `m` objectives.
///
/// A single lattice is used when one has exactly `n` points. For `m > 5` a
/// two-layer set is tried next. Otherwise the largest lattice not exceeding
/// `n` is padded with uniformly random simplex points drawn from `rng`.
pub fn weights_for_population<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    if m < 2 {
        return Err(Error::Config(format!(
            "need at least 2 objectives, got {m}"
        )));
    }
    if n < m {
        return Err(Error::Config(format!(
            "population size {n} is smaller than the objective count {m}"
        )));
    }
    let mut largest = 1;
    let mut h = 1;
    while lattice_size(m, h) <= n {
        if lattice_size(m, h) == n {
            return generate_weights(m, &[h]);
        }
        largest = h;
        h += 1;
    }
    if m > 5 {
        for outer in (1..=largest).rev() {
            let rest = n - lattice_size(m, outer);
            for inner in (1..outer).rev() {
                if lattice_size(m, inner) == rest {
                    return generate_weights(m, &[outer, inner]);
                }
            }
        }
    }
    let mut w = generate_weights(m, &[largest])?;
    while w.len() < n {
        w.push(random_simplex_point(m, rng));
    }
    Ok(w)
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// For each weight, the indices of its `t` nearest weights (Euclidean, self
/// included, ties broken by index).
pub fn build_neighborhoods(weights: &[Vec<f64>], t: usize) -> Result<Vec<Vec<usize>>> {
    if t == 0 || t > weights.len() {
        return Err(Error::Config(format!(
            "neighborhood size {t} must lie in 1..={}",
            weights.len()
        )));
    }
    Ok(weights
        .iter()
        .map(|w| {
            let mut idx: Vec<(f64, usize)> = weights
                .iter()
                .enumerate()
                .map(|(j, v)| (sq_dist(w, v), j))
                .collect();
            idx.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            idx.truncate(t);
            idx.into_iter().map(|(_, j)| j).collect()
        })
        .collect())
}

/// Inverted Tchebycheff value `max_i |f_i - z_i| / w_i`, zero weights floored
/// at [`WEIGHT_FLOOR`].
pub fn tch(objectives: &[f64], weight: &[f64], ideal: &[f64]) -> f64 {
    objectives
        .iter()
        .zip(weight)
        .zip(ideal)
        .map(|((f, w), z)| (f - z).abs() / w.max(WEIGHT_FLOOR))
        .fold(0.0, f64::max)
}

/// Distance from `point` to the ray spanned by `weight`.
pub fn perp_distance(point: &[f64], weight: &[f64]) -> f64 {
    let ww: f64 = weight.iter().map(|w| w * w).sum();
    let wf: f64 = weight.iter().zip(point).map(|(w, f)| w * f).sum();
    let s = wf / ww;
    point
        .iter()
        .zip(weight)
        .map(|(f, w)| {
            let d = f - s * w;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Ideal point and hyperplane intercepts used to map objectives to a common
/// scale.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationContext {
    pub ideal: Vec<f64>,
    pub intercepts: Vec<f64>,
}

impl NormalizationContext {
    /// Fresh context: ideal at +inf, unit intercepts.
    pub fn new(m: usize) -> Self {
        Self {
            ideal: vec![f64::INFINITY; m],
            intercepts: vec![1.0; m],
        }
    }

    pub fn m(&self) -> usize {
        self.ideal.len()
    }

    /// Componentwise minimum with `f`.
    pub fn update_ideal(&mut self, f: &[f64]) {
        for (z, &v) in self.ideal.iter_mut().zip(f) {
            if v < *z {
                *z = v;
            }
        }
    }

    /// Recomputes the intercepts from `objectives` and returns
    /// `(f_i - z_i) / a_i` for every vector.
    ///
    /// Extreme points minimize the achievement scalarizing function along each
    /// axis, evaluated on objectives divided by their current range so the
    /// choice does not depend on objective scale. The intercepts come from the
    /// hyperplane through them. The per-objective range `max_i - z_i` replaces
    /// the hyperplane whenever the
    /// extreme points are nearly linearly dependent, an intercept is not finite,
    /// or an intercept falls below [`WEIGHT_FLOOR`].
    pub fn normalize(&mut self, objectives: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        let m = self.m();
        if objectives.is_empty() {
            return Err(Error::Contract(
                "cannot normalize an empty population".into(),
            ));
        }
        if let Some(bad) = objectives.iter().find(|f| f.len() != m) {
            return Err(Error::Dimension {
                expected: m,
                actual: bad.len(),
            });
        }
        if self.ideal.iter().any(|z| !z.is_finite()) {
            for f in objectives {
                self.update_ideal(f);
            }
        }
        self.intercepts = self
            .hyperplane_intercepts(objectives)
            .unwrap_or_else(|| self.range_intercepts(objectives));
        Ok(self.apply(objectives))
    }

    /// Maps vectors with the current ideal and intercepts.
    pub fn apply(&self, objectives: &[Vec<f64>]) -> Vec<Vec<f64>> {
        objectives
            .iter()
            .map(|f| {
                f.iter()
                    .zip(&self.ideal)
                    .zip(&self.intercepts)
                    .map(|((v, z), a)| (v - z) / a)
                    .collect()
            })
            .collect()
    }

    fn range_intercepts(&self, objectives: &[Vec<f64>]) -> Vec<f64> {
        (0..self.m())
            .map(|i| {
                objectives
                    .iter()
                    .map(|f| f[i] - self.ideal[i])
                    .fold(f64::NEG_INFINITY, f64::max)
                    .max(WEIGHT_FLOOR)
            })
            .collect()
    }

    fn hyperplane_intercepts(&self, objectives: &[Vec<f64>]) -> Option<Vec<f64>> {
        let m = self.m();
        let range = self.range_intercepts(objectives);
        let mut extremes = DMatrix::<f64>::zeros(m, m);
        for axis in 0..m {
            let asf = |f: &[f64]| {
                (0..m)
                    .map(|i| {
                        let w = if i == axis { 1.0 } else { WEIGHT_FLOOR };
                        (f[i] - self.ideal[i]) / (range[i] * w)
                    })
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            let best = objectives
                .iter()
                .min_by(|a, b| asf(a).total_cmp(&asf(b)))
                .expect("non-empty");
            for i in 0..m {
                extremes[(axis, i)] = best[i] - self.ideal[i];
            }
        }
        let sv = extremes.clone().singular_values();
        if sv.min() <= 1e-10 * sv.max() {
            return None;
        }
        let b = extremes.lu().solve(&DVector::from_element(m, 1.0))?;
        let intercepts: Vec<f64> = b.iter().map(|v| 1.0 / v).collect();
        intercepts
            .iter()
            .all(|a| a.is_finite() && *a >= WEIGHT_FLOOR)
            .then_some(intercepts)
    }
}
