//! One optimization run with the default settings for an instance.
//!
//! ```text
//! cargo run --release --example optimize -- MOP1 aoostm 1 [budget]
//! ```

use std::env;

use stable_moead::optimizer::{run, Algorithm, OptimizerConfig};
use stable_moead::problems::native_objectives;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = env::args().skip(1).collect();
    let problem = args.first().map_or("MOP1", String::as_str);
    let algorithm: Algorithm = args.get(1).map_or("aoostm", String::as_str).parse()?;
    let seed: u64 = args.get(2).map_or(Ok(1), |s| s.parse())?;
    let m = native_objectives(problem)?.unwrap_or(2);

    let mut config = OptimizerConfig::new(problem, m, algorithm, seed)?;
    if let Some(budget) = args.get(3) {
        config.budget = budget.parse()?;
    }
    config.checkpoint_every = Some(config.budget / 10);

    let record = run(&config)?;
    println!(
        "{} / {} / seed {}: N={} budget={}",
        config.problem, algorithm, seed, config.pop_size, config.budget
    );
    for c in &record.checkpoints {
        println!("{:>8}  IGD {:.4e}  HV {:.4}", c.neval, c.igd, c.hv);
    }
    println!(
        "{} generations in {} ms",
        record.generations, record.wall_ms
    );
    Ok(())
}
