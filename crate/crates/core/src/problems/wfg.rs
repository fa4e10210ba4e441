//! WFG1-WFG9 built from the toolkit's transformation and shape functions
//! (Huband, Hingston, Barone and While, 2006).
//!
//! Variables `z_i` live in `[0, 2i]`; the first `k` are position-related and
//! the remaining `l` distance-related. Scaling constants are `S_m = 2m` and
//! `D = 1`.

use std::f64::consts::PI;

const PARAM_A: f64 = 0.98 / 49.98;
const PARAM_B: f64 = 0.02;
const PARAM_C: f64 = 50.0;

fn clamp01(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

pub(crate) fn b_poly(y: f64, alpha: f64) -> f64 {
    clamp01(y.powf(alpha))
}

pub(crate) fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let v = a + (y - b).floor().min(0.0) * a * (b - y) / b
        - (c - y).floor().min(0.0) * (1.0 - a) * (y - c) / (1.0 - c);
    clamp01(v)
}

pub(crate) fn b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
    let e = b + (c - b) * (a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs());
    clamp01(y.powf(e))
}

pub(crate) fn s_linear(y: f64, a: f64) -> f64 {
    clamp01((y - a).abs() / ((a - y).floor() + a).abs())
}

pub(crate) fn s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let t2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    clamp01(1.0 + ((y - a).abs() - b) * (t1 + t2 + 1.0 / b))
}

pub(crate) fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let d = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    clamp01((1.0 + ((4.0 * a + 2.0) * PI * (0.5 - d)).cos() + 4.0 * b * d * d) / (b + 2.0))
}

pub(crate) fn r_sum(y: &[f64], w: &[f64]) -> f64 {
    let num: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
    clamp01(num / w.iter().sum::<f64>())
}

pub(crate) fn r_nonsep(y: &[f64], a: usize) -> f64 {
    let n = y.len();
    let mut num = 0.0;
    for j in 0..n {
        num += y[j];
        for k in 0..a.saturating_sub(1) {
            num += (y[j] - y[(j + k + 1) % n]).abs();
        }
    }
    let half = a.div_ceil(2) as f64;
    let af = a as f64;
    clamp01(num / ((n as f64 / af) * half * (1.0 + 2.0 * af - 2.0 * half)))
}

// Applies `f` to each position group and to the distance tail, producing the
// m reduced parameters. `f` receives the slice and its global start index.
fn reduce(y: &[f64], m: usize, k: usize, f: impl Fn(&[f64], usize) -> f64) -> Vec<f64> {
    let gs = k / (m - 1);
    let mut t: Vec<f64> = (0..m - 1)
        .map(|i| f(&y[i * gs..(i + 1) * gs], i * gs))
        .collect();
    t.push(f(&y[k..], k));
    t
}

fn ones(len: usize) -> Vec<f64> {
    vec![1.0; len]
}

fn sum_ones(s: &[f64], _start: usize) -> f64 {
    r_sum(s, &ones(s.len()))
}

fn linear_distance(y: &mut [f64], k: usize) {
    for v in &mut y[k..] {
        *v = s_linear(*v, 0.35);
    }
}

fn pair_distance(y: &[f64], k: usize) -> Vec<f64> {
    let mut out = y[..k].to_vec();
    out.extend(y[k..].chunks(2).map(|p| r_nonsep(p, 2)));
    out
}

fn transition(id: u8, m: usize, k: usize, y: &[f64]) -> Vec<f64> {
    let n = y.len();
    let l = n - k;
    let mut y = y.to_vec();
    match id {
        1 => {
            linear_distance(&mut y, k);
            for v in &mut y[k..] {
                *v = b_flat(*v, 0.8, 0.75, 0.85);
            }
            for v in &mut y {
                *v = b_poly(*v, 0.02);
            }
            reduce(&y, m, k, |s, start| {
                let w: Vec<f64> = (start..start + s.len())
                    .map(|i| 2.0 * (i + 1) as f64)
                    .collect();
                r_sum(s, &w)
            })
        }
        2 | 3 => {
            linear_distance(&mut y, k);
            let y = pair_distance(&y, k);
            reduce(&y, m, k, sum_ones)
        }
        4 => {
            for v in &mut y {
                *v = s_multi(*v, 30.0, 10.0, 0.35);
            }
            reduce(&y, m, k, sum_ones)
        }
        5 => {
            for v in &mut y {
                *v = s_decept(*v, 0.35, 0.001, 0.05);
            }
            reduce(&y, m, k, sum_ones)
        }
        6 => {
            linear_distance(&mut y, k);
            let gs = k / (m - 1);
            reduce(&y, m, k, |s, start| {
                if start < k {
                    r_nonsep(s, gs)
                } else {
                    r_nonsep(s, l)
                }
            })
        }
        7 => {
            let src = y.clone();
            for i in 0..k {
                y[i] = b_param(
                    src[i],
                    sum_ones(&src[i + 1..], 0),
                    PARAM_A,
                    PARAM_B,
                    PARAM_C,
                );
            }
            linear_distance(&mut y, k);
            reduce(&y, m, k, sum_ones)
        }
        8 => {
            let src = y.clone();
            for i in k..n {
                y[i] = b_param(src[i], sum_ones(&src[..i], 0), PARAM_A, PARAM_B, PARAM_C);
            }
            linear_distance(&mut y, k);
            reduce(&y, m, k, sum_ones)
        }
        9 => {
            let src = y.clone();
            for i in 0..n - 1 {
                y[i] = b_param(
                    src[i],
                    sum_ones(&src[i + 1..], 0),
                    PARAM_A,
                    PARAM_B,
                    PARAM_C,
                );
            }
            for (i, v) in y.iter_mut().enumerate() {
                *v = if i < k {
                    s_decept(*v, 0.35, 0.001, 0.05)
                } else {
                    s_multi(*v, 30.0, 95.0, 0.35)
                };
            }
            let gs = k / (m - 1);
            reduce(&y, m, k, |s, start| {
                if start < k {
                    r_nonsep(s, gs)
                } else {
                    r_nonsep(s, l)
                }
            })
        }
        _ => unreachable!("WFG id checked at construction"),
    }
}

#[derive(Clone, Copy)]
enum Shape {
    Linear,
    Convex,
    Concave,
}

fn base_shape(id: u8) -> Shape {
    match id {
        1 | 2 => Shape::Convex,
        3 => Shape::Linear,
        _ => Shape::Concave,
    }
}

fn shape_terms(shape: Shape, v: f64) -> (f64, f64) {
    match shape {
        Shape::Linear => (v, 1.0 - v),
        Shape::Convex => (1.0 - (0.5 * PI * v).cos(), 1.0 - (0.5 * PI * v).sin()),
        Shape::Concave => ((0.5 * PI * v).sin(), (0.5 * PI * v).cos()),
    }
}

/// Shape values `h_1..h_m` for position parameters `x_1..x_{m-1}`.
pub(crate) fn shape(id: u8, pos: &[f64]) -> Vec<f64> {
    let m = pos.len() + 1;
    let kind = base_shape(id);
    let mut h = Vec::with_capacity(m);
    for mi in 1..=m {
        let mut v: f64 = pos[..m - mi]
            .iter()
            .map(|&p| shape_terms(kind, p).0)
            .product();
        if mi > 1 {
            v *= shape_terms(kind, pos[m - mi]).1;
        }
        h.push(v);
    }
    let x1 = pos[0];
    match id {
        1 => h[m - 1] = 1.0 - x1 - (10.0 * PI * x1 + 0.5 * PI).cos() / (10.0 * PI),
        2 => h[m - 1] = 1.0 - x1 * (5.0 * x1 * PI).cos().powi(2),
        _ => {}
    }
    h
}

pub(crate) fn scale(h: &[f64], distance: f64) -> Vec<f64> {
    h.iter()
        .enumerate()
        .map(|(i, v)| distance + 2.0 * (i + 1) as f64 * v)
        .collect()
}

pub(crate) fn evaluate(id: u8, m: usize, k: usize, z: &[f64]) -> Vec<f64> {
    let y: Vec<f64> = z
        .iter()
        .enumerate()
        .map(|(i, v)| v / (2.0 * (i + 1) as f64))
        .collect();
    let t = transition(id, m, k, &y);
    let tm = t[m - 1];
    let pos: Vec<f64> = (0..m - 1)
        .map(|i| {
            let a = if id == 3 && i > 0 { 0.0 } else { 1.0 };
            tm.max(a) * (t[i] - 0.5) + 0.5
        })
        .collect();
    scale(&shape(id, &pos), tm)
}

/// Pareto-set point with position parameters `pos01` in `[0,1]^k`; only the
/// instances whose optimal distance variables are constant (WFG1-WFG7).
pub(crate) fn pareto_set_point(id: u8, k: usize, l: usize, pos01: &[f64]) -> Option<Vec<f64>> {
    if id > 7 {
        return None;
    }
    Some(
        (0..k + l)
            .map(|i| {
                let hi = 2.0 * (i + 1) as f64;
                if i < k {
                    pos01[i] * hi
                } else {
                    0.35 * hi
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_fixed_points() {
        assert_eq!(s_linear(0.35, 0.35), 0.0);
        assert!(s_multi(0.35, 30.0, 10.0, 0.35).abs() < 1e-12);
        assert!(s_decept(0.35, 0.35, 0.001, 0.05).abs() < 1e-12);
        assert_eq!(b_flat(0.8, 0.8, 0.75, 0.85), 0.8);
        assert!((r_nonsep(&[1.0, 0.0], 2) - 1.0).abs() < 1e-15);
        assert!((r_nonsep(&[0.2, 0.2], 2) - 0.4 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn concave_front_is_spherical() {
        for id in 4..=7 {
            let z = pareto_set_point(id, 4, 20, &[0.1, 0.5, 0.7, 0.3]).unwrap();
            let f = evaluate(id, 3, 4, &z);
            let r: f64 = f
                .iter()
                .enumerate()
                .map(|(i, v)| (v / (2.0 * (i + 1) as f64)).powi(2))
                .sum();
            assert!((r - 1.0).abs() < 1e-9, "WFG{id}: {r}");
        }
    }

    #[test]
    fn lower_corner_is_within_scale() {
        for id in 1..=9 {
            let f = evaluate(id, 2, 2, &[0.0; 6]);
            for (i, v) in f.iter().enumerate() {
                assert!(*v >= 0.0 && *v <= 1.0 + 2.0 * (i + 1) as f64, "WFG{id}");
            }
        }
    }
}
