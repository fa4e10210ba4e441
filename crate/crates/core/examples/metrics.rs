//! IGD and hypervolume of a point set. Without a file argument, scores a
//! shifted copy of the front itself.
//!
//! ```text
//! cargo run --example metrics -- UF1 [points.csv]
//! ```

use std::env;
use std::path::Path;

use stable_moead::metrics::{score, MetricConfig};
use stable_moead::problems::{native_objectives, read_points, ProblemInstance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = env::args().nth(1).unwrap_or_else(|| "UF1".into());
    let m = native_objectives(&name)?.unwrap_or(2);
    let problem = ProblemInstance::new(&name, m)?;
    let cfg = MetricConfig::for_problem(&problem);

    let points = match env::args().nth(2) {
        Some(path) => read_points(Path::new(&path))?,
        None => {
            let front = problem.reference_front();
            let mut points = Vec::new();
            for shift in [0.0, 0.01, 0.05, 0.2] {
                let shifted: Vec<Vec<f64>> = front
                    .points
                    .iter()
                    .map(|p| p.iter().map(|v| v + shift).collect())
                    .collect();
                let s = score(&problem, &shifted, &cfg)?;
                println!("front + {shift:<4}  IGD {:.4e}  HV {:.4}", s.igd, s.hv);
                points = shifted;
            }
            points
        }
    };
    let s = score(&problem, &points, &cfg)?;
    println!(
        "{name}: {} points, IGD {:.4e}, HV {:.4}",
        points.len(),
        s.igd,
        s.hv
    );
    Ok(())
}
