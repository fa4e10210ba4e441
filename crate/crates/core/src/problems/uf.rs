//! UF1-UF10 unconstrained test instances (CEC 2009 competition).
//!
//! Indices in the comments are 1-based to match the usual definitions;
//! `x[0]` is x1. UF1-UF7 are bi-objective, UF8-UF10 tri-objective.

use std::f64::consts::PI;

const UF5_N: f64 = 10.0;
const UF5_EPS: f64 = 0.1;
const UF6_N: f64 = 2.0;
const UF6_EPS: f64 = 0.1;
const UF9_EPS: f64 = 0.1;

pub(crate) fn bounds(id: u8, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| match (id, i) {
            (3, _) => (0.0, 1.0),
            (_, 0) => (0.0, 1.0),
            (8..=10, 1) => (0.0, 1.0),
            (4 | 8 | 9 | 10, _) => (-2.0, 2.0),
            _ => (-1.0, 1.0),
        })
        .collect()
}

pub(crate) fn objectives(id: u8) -> usize {
    if id >= 8 {
        3
    } else {
        2
    }
}

// Accumulates per-group sums for the bi-objective instances: group 0 holds
// odd j, group 1 even j (j >= 2).
struct Groups2 {
    sum: [f64; 2],
    prod: [f64; 2],
    count: [f64; 2],
}

impl Groups2 {
    fn new() -> Self {
        Self {
            sum: [0.0; 2],
            prod: [1.0; 2],
            count: [0.0; 2],
        }
    }

    fn add(&mut self, j: usize, s: f64, p: f64) {
        let g = if j % 2 == 1 { 0 } else { 1 };
        self.sum[g] += s;
        self.prod[g] *= p;
        self.count[g] += 1.0;
    }
}

fn sin_shift(x: &[f64], j: usize) -> f64 {
    let n = x.len() as f64;
    x[j - 1] - (6.0 * PI * x[0] + j as f64 * PI / n).sin()
}

fn bi(x: &[f64], y: impl Fn(usize) -> f64, h: impl Fn(f64) -> f64) -> Groups2 {
    let mut g = Groups2::new();
    for j in 2..=x.len() {
        g.add(j, h(y(j)), 1.0);
    }
    g
}

fn rastrigin_like(x: &[f64], y: impl Fn(usize) -> f64) -> [f64; 2] {
    let mut g = Groups2::new();
    for j in 2..=x.len() {
        let v = y(j);
        g.add(j, v * v, (20.0 * v * PI / (j as f64).sqrt()).cos());
    }
    [0, 1].map(|k| 2.0 / g.count[k] * (4.0 * g.sum[k] - 2.0 * g.prod[k] + 2.0))
}

fn mean2(g: &Groups2) -> [f64; 2] {
    [0, 1].map(|k| 2.0 * g.sum[k] / g.count[k])
}

pub(crate) fn evaluate(id: u8, x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let x1 = x[0];
    match id {
        1 => {
            let g = mean2(&bi(x, |j| sin_shift(x, j), |v| v * v));
            vec![x1 + g[0], 1.0 - x1.sqrt() + g[1]]
        }
        2 => {
            let y = |j: usize| {
                let jf = j as f64;
                let amp = 0.3 * x1 * x1 * (24.0 * PI * x1 + 4.0 * jf * PI / n).cos() + 0.6 * x1;
                let angle = 6.0 * PI * x1 + jf * PI / n;
                let trig = if j % 2 == 1 { angle.cos() } else { angle.sin() };
                x[j - 1] - amp * trig
            };
            let g = mean2(&bi(x, y, |v| v * v));
            vec![x1 + g[0], 1.0 - x1.sqrt() + g[1]]
        }
        3 => {
            let y = |j: usize| x[j - 1] - x1.powf(0.5 * (1.0 + 3.0 * (j as f64 - 2.0) / (n - 2.0)));
            let g = rastrigin_like(x, y);
            vec![x1 + g[0], 1.0 - x1.sqrt() + g[1]]
        }
        4 => {
            let h = |t: f64| t.abs() / (1.0 + (2.0 * t.abs()).exp());
            let g = mean2(&bi(x, |j| sin_shift(x, j), h));
            vec![x1 + g[0], 1.0 - x1 * x1 + g[1]]
        }
        5 => {
            let h = |t: f64| 2.0 * t * t - (4.0 * PI * t).cos() + 1.0;
            let g = mean2(&bi(x, |j| sin_shift(x, j), h));
            let ripple = (0.5 / UF5_N + UF5_EPS) * (2.0 * UF5_N * PI * x1).sin().abs();
            vec![x1 + ripple + g[0], 1.0 - x1 + ripple + g[1]]
        }
        6 => {
            let g = rastrigin_like(x, |j| sin_shift(x, j));
            let ripple = (2.0 * (0.5 / UF6_N + UF6_EPS) * (2.0 * UF6_N * PI * x1).sin()).max(0.0);
            vec![x1 + ripple + g[0], 1.0 - x1 + ripple + g[1]]
        }
        7 => {
            let g = mean2(&bi(x, |j| sin_shift(x, j), |v| v * v));
            let r = x1.powf(0.2);
            vec![r + g[0], 1.0 - r + g[1]]
        }
        8..=10 => tri(id, x),
        _ => unreachable!("UF id checked at construction"),
    }
}

fn tri(id: u8, x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let (x1, x2) = (x[0], x[1]);
    let mut sum = [0.0; 3];
    let mut count = [0.0; 3];
    for j in 3..=x.len() {
        let y = x[j - 1] - 2.0 * x2 * (2.0 * PI * x1 + j as f64 * PI / n).sin();
        let h = if id == 10 {
            4.0 * y * y - (8.0 * PI * y).cos() + 1.0
        } else {
            y * y
        };
        // j-1, j-2 and j multiples of three select groups 1, 2 and 3.
        let g = (j + 2) % 3;
        sum[g] += h;
        count[g] += 1.0;
    }
    let g: [f64; 3] = [0, 1, 2].map(|k| 2.0 * sum[k] / count[k]);
    if id == 9 {
        let bump = ((1.0 + UF9_EPS) * (1.0 - 4.0 * (2.0 * x1 - 1.0).powi(2))).max(0.0);
        vec![
            0.5 * (bump + 2.0 * x1) * x2 + g[0],
            0.5 * (bump - 2.0 * x1 + 2.0) * x2 + g[1],
            1.0 - x2 + g[2],
        ]
    } else {
        let (a, b) = (0.5 * PI * x1, 0.5 * PI * x2);
        vec![
            a.cos() * b.cos() + g[0],
            a.cos() * b.sin() + g[1],
            a.sin() + g[2],
        ]
    }
}

/// A Pareto-set point built from the free variables (`x1`, and `x2` for the
/// tri-objective instances).
pub(crate) fn pareto_set_point(id: u8, n: usize, free: &[f64]) -> Vec<f64> {
    let nf = n as f64;
    let x1 = free[0];
    let mut x = vec![0.0; n];
    x[0] = x1;
    if id >= 8 {
        x[1] = free[1];
        for j in 3..=n {
            x[j - 1] = 2.0 * free[1] * (2.0 * PI * x1 + j as f64 * PI / nf).sin();
        }
        return x;
    }
    for j in 2..=n {
        let jf = j as f64;
        x[j - 1] = match id {
            2 => {
                let amp = 0.3 * x1 * x1 * (24.0 * PI * x1 + 4.0 * jf * PI / nf).cos() + 0.6 * x1;
                let angle = 6.0 * PI * x1 + jf * PI / nf;
                amp * if j % 2 == 1 { angle.cos() } else { angle.sin() }
            }
            3 => x1.powf(0.5 * (1.0 + 3.0 * (jf - 2.0) / (nf - 2.0))),
            _ => (6.0 * PI * x1 + jf * PI / nf).sin(),
        };
    }
    x
}
