//! Samples the Pareto front of every bundled instance and writes them as CSV.
//!
//! ```text
//! cargo run --release --example fronts -- [out_dir] [count]
//! ```

use std::env;
use std::fs;
use std::path::PathBuf;

use stable_moead::metrics::{bounds_of, hv, normalize_for_metrics};
use stable_moead::problems::ProblemInstance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(env::args().nth(1).unwrap_or_else(|| "fronts".into()));
    let count: usize = env::args().nth(2).map_or(Ok(1000), |s| s.parse())?;
    fs::create_dir_all(&out)?;

    let mut instances: Vec<ProblemInstance> = Vec::new();
    for i in 1..=10 {
        instances.push(ProblemInstance::new(
            &format!("UF{i}"),
            if i <= 7 { 2 } else { 3 },
        )?);
    }
    for i in 1..=7 {
        instances.push(ProblemInstance::new(
            &format!("MOP{i}"),
            if i <= 5 { 2 } else { 3 },
        )?);
    }
    for i in 1..=9 {
        instances.push(ProblemInstance::new(&format!("WFG{i}"), 2)?);
    }

    println!("{:<8} {:>2} {:>6} {:>8}", "problem", "m", "points", "HV");
    for p in &instances {
        let pf = p.sample_pf(count)?;
        let points = if p.name().starts_with("WFG") {
            let (lo, hi) = bounds_of(&pf.points)?;
            normalize_for_metrics(&pf.points, &lo, &hi)?
        } else {
            pf.points.clone()
        };
        let volume = hv(&points, &vec![1.2; p.m()])?;
        pf.write_csv(&out.join(format!("{}.csv", p.name())))?;
        println!(
            "{:<8} {:>2} {:>6} {:>8.4}",
            p.name(),
            p.m(),
            pf.len(),
            volume
        );
    }
    Ok(())
}
