//! MOP1-MOP7: instances with imbalanced difficulty between the two sides of
//! the front (Liu, Gu and Zhang, 2014). All use the unit box.

use std::f64::consts::PI;

pub(crate) fn objectives(id: u8) -> usize {
    if id >= 6 {
        3
    } else {
        2
    }
}

fn shift(x: &[f64], i: usize) -> f64 {
    x[i] - (0.5 * PI * x[0]).sin()
}

fn hump(t: f64) -> f64 {
    -0.9 * t * t + t.abs().powf(0.6)
}

fn well(t: f64) -> f64 {
    t.abs() / (1.0 + (5.0 * t.abs()).exp())
}

pub(crate) fn evaluate(id: u8, x: &[f64]) -> Vec<f64> {
    let x1 = x[0];
    match id {
        1..=5 => {
            let tail = 1..x.len();
            let g = match id {
                1 => 2.0 * (PI * x1).sin() * tail.map(|i| hump(shift(x, i))).sum::<f64>(),
                5 => 2.0 * (PI * x1).cos().abs() * tail.map(|i| hump(shift(x, i))).sum::<f64>(),
                _ => 10.0 * (PI * x1).sin() * tail.map(|i| well(shift(x, i))).sum::<f64>(),
            };
            let s = 1.0 + g;
            match id {
                1 | 5 => vec![s * x1, s * (1.0 - x1.sqrt())],
                2 => vec![s * x1, s * (1.0 - x1 * x1)],
                3 => vec![s * (0.5 * PI * x1).cos(), s * (0.5 * PI * x1).sin()],
                _ => vec![
                    s * x1,
                    s * (1.0 - x1.sqrt() * (2.0 * PI * x1).cos().powi(2)),
                ],
            }
        }
        6 | 7 => {
            let x2 = x[1];
            let g = 2.0 * (PI * x1).sin() * (2..x.len()).map(|i| hump(x[i] - x1 * x2)).sum::<f64>();
            let s = 1.0 + g;
            if id == 6 {
                vec![s * x1 * x2, s * x1 * (1.0 - x2), s * (1.0 - x1)]
            } else {
                let (a, b) = (0.5 * PI * x1, 0.5 * PI * x2);
                vec![s * a.cos() * b.cos(), s * a.cos() * b.sin(), s * a.sin()]
            }
        }
        _ => unreachable!("MOP id checked at construction"),
    }
}

pub(crate) fn pareto_set_point(id: u8, n: usize, free: &[f64]) -> Vec<f64> {
    let x1 = free[0];
    let mut x = vec![0.0; n];
    x[0] = x1;
    if id >= 6 {
        x[1] = free[1];
        for v in x.iter_mut().skip(2) {
            *v = x1 * free[1];
        }
    } else {
        for v in x.iter_mut().skip(1) {
            *v = (0.5 * PI * x1).sin();
        }
    }
    x
}
