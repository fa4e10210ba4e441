//! Pareto-front sampling.
//!
//! Continuous bi-objective UF/MOP fronts are sampled on a uniform grid of
//! their curve parameter. Other bi-objective fronts are traced densely,
//! filtered for dominance and resampled evenly by arc length, which keeps
//! gaps between disconnected pieces out of the spacing. Fronts with three or
//! more objectives use simplex lattices (mapped to the sphere or filtered to
//! the feasible part of a plane) or a parameter grid for WFG1/WFG2.

use std::f64::consts::PI;

use super::{nondominated_indices, wfg, ProblemInstance, Suite};
use crate::decomposition::{lattice_size, simplex_lattice};

const DENSE: usize = 200_000;

pub(super) fn sample(p: &ProblemInstance, count: usize) -> Vec<Vec<f64>> {
    let (suite, id, m) = (p.suite(), p.id(), p.m());
    if m == 2 {
        return match (suite, id) {
            (Suite::Uf, 5) => uf5(count),
            (Suite::Uf, 6) => arc_resample(uf6_dense(), count),
            (Suite::Mop, 4) => arc_resample(
                dense_curve(|t| [t, 1.0 - t.sqrt() * (2.0 * PI * t).cos().powi(2)]),
                count,
            ),
            (Suite::Wfg, _) => arc_resample(
                dense_curve(|t| {
                    let f = wfg::scale(&wfg::shape(id, &[t]), 0.0);
                    [f[0], f[1]]
                }),
                count,
            ),
            _ => {
                let curve = bi_curve(suite, id);
                grid(count).map(|t| curve(t).to_vec()).collect()
            }
        };
    }
    match (suite, id) {
        (Suite::Uf, 9) => lattice_front(m, count, |w| {
            let s = w[0] + w[1];
            let keep = s < 1e-12 || {
                let r = w[0] / s;
                r <= 0.25 + 1e-12 || r >= 0.75 - 1e-12
            };
            keep.then(|| w.to_vec())
        }),
        (Suite::Mop, 6) => lattice_front(m, count, |w| Some(w.to_vec())),
        (Suite::Wfg, 1 | 2) => wfg_grid(id, m, count),
        (Suite::Wfg, 3) => grid(count)
            .map(|t| {
                let mut pos = vec![0.5; m - 1];
                pos[0] = t;
                wfg::scale(&wfg::shape(3, &pos), 0.0)
            })
            .collect(),
        _ => {
            let scaled = suite == Suite::Wfg;
            lattice_front(m, count, |w| {
                let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
                Some(
                    w.iter()
                        .enumerate()
                        .map(|(i, v)| {
                            let s = if scaled { 2.0 * (i + 1) as f64 } else { 1.0 };
                            s * v / norm
                        })
                        .collect(),
                )
            })
        }
    }
}

fn grid(count: usize) -> impl Iterator<Item = f64> {
    let denom = count.saturating_sub(1).max(1) as f64;
    (0..count).map(move |i| i as f64 / denom)
}

fn bi_curve(suite: Suite, id: u8) -> fn(f64) -> [f64; 2] {
    match (suite, id) {
        (Suite::Uf, 4) | (Suite::Mop, 2) => |t| [t, 1.0 - t * t],
        (Suite::Uf, 7) => |t| [t, 1.0 - t],
        (Suite::Mop, 3) => |t| [(0.5 * PI * t).cos(), (0.5 * PI * t).sin()],
        // UF1-UF3, MOP1, MOP5: f2 = 1 - sqrt(f1), parameterized by sqrt(f1).
        _ => |t| [t * t, 1.0 - t],
    }
}

fn uf5(count: usize) -> Vec<Vec<f64>> {
    let total = 21;
    let pick = count.min(total);
    let denom = pick.saturating_sub(1).max(1);
    (0..pick)
        .map(|i| {
            let f1 = ((i * (total - 1) + denom / 2) / denom) as f64 / 20.0;
            vec![f1, 1.0 - f1]
        })
        .collect()
}

fn uf6_dense() -> Vec<[f64; 2]> {
    let mut pts = vec![[0.0, 1.0]];
    for (a, b) in [(0.25, 0.5), (0.75, 1.0)] {
        let steps = DENSE / 2;
        for i in 0..=steps {
            let f1 = a + (b - a) * i as f64 / steps as f64;
            pts.push([f1, 1.0 - f1]);
        }
    }
    pts
}

fn dense_curve(f: impl Fn(f64) -> [f64; 2]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = (0..=DENSE).map(|i| f(i as f64 / DENSE as f64)).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut out: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last().is_none_or(|q| p[1] < q[1]) {
            out.push(p);
        }
    }
    out
}

// `pts` sorted by f1 and mutually non-dominated.
fn arc_resample(pts: Vec<[f64; 2]>, count: usize) -> Vec<Vec<f64>> {
    if pts.len() <= count {
        return pts.into_iter().map(|p| p.to_vec()).collect();
    }
    let steps: Vec<f64> = pts
        .windows(2)
        .map(|w| ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt())
        .collect();
    let mut sorted = steps.clone();
    sorted.sort_by(f64::total_cmp);
    let gap = 100.0 * sorted[sorted.len() / 2].max(f64::MIN_POSITIVE);
    let mut cum = vec![0.0];
    for s in &steps {
        let last = *cum.last().expect("non-empty");
        cum.push(if *s > gap { last } else { last + s });
    }
    let total = *cum.last().expect("non-empty");
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(count);
    let mut last_idx = usize::MAX;
    for target in grid(count).map(|t| t * total) {
        let idx = cum.partition_point(|&c| c < target).min(pts.len() - 1);
        // Flat stretches across a gap share a length; walk forward so a
        // piece's start is never skipped.
        let idx = if idx == last_idx && idx + 1 < pts.len() {
            idx + 1
        } else {
            idx
        };
        last_idx = idx;
        out.push(pts[idx].to_vec());
    }
    out
}

// Largest lattice whose accepted image has at most `count` points.
fn lattice_front(
    m: usize,
    count: usize,
    map: impl Fn(&[f64]) -> Option<Vec<f64>>,
) -> Vec<Vec<f64>> {
    let build = |h: usize| -> Vec<Vec<f64>> {
        simplex_lattice(m, h)
            .iter()
            .filter_map(|w| map(w))
            .collect()
    };
    let mut best = build(1);
    if best.len() >= count {
        best.truncate(count);
        return best;
    }
    let mut h = 2;
    while lattice_size(m, h + 1) <= count {
        h += 1;
    }
    if h > 2 {
        best = build(h - 1);
    }
    while lattice_size(m, h) <= count.saturating_mul(4) {
        let next = build(h);
        if next.len() > count {
            break;
        }
        best = next;
        h += 1;
    }
    best
}

fn wfg_grid(id: u8, m: usize, count: usize) -> Vec<Vec<f64>> {
    let dims = m - 1;
    let mut g = 1usize;
    while (g + 1).checked_pow(dims as u32).is_some_and(|v| v <= count) {
        g += 1;
    }
    let total = g.pow(dims as u32);
    let step = |i: usize| {
        if g == 1 {
            0.0
        } else {
            i as f64 / (g - 1) as f64
        }
    };
    let pts: Vec<Vec<f64>> = (0..total)
        .map(|mut c| {
            let pos: Vec<f64> = (0..dims)
                .map(|_| {
                    let v = step(c % g);
                    c /= g;
                    v
                })
                .collect();
            wfg::scale(&wfg::shape(id, &pos), 0.0)
        })
        .collect();
    nondominated_indices(&pts)
        .into_iter()
        .map(|i| pts[i].clone())
        .collect()
}
