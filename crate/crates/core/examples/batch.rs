//! A small comparison campaign: every selection variant on two problems,
//! summarized by mean, std, rank and performance score, with CSV output.
//!
//! ```text
//! cargo run --release --example batch -- [out_dir]
//! ```

use std::env;
use std::path::PathBuf;

use stable_moead::harness::{
    aggregate, emit_results, outperform_by_mean, parse_config, performance_score, run_batch, Metric,
};

const EXPERIMENTS: &str = r#"
[mop2_aoostm]
problem = "MOP2"
algo = "aoostm"
pop = 50
evals = 15000
reps = 5

[mop2_amostm]
problem = "MOP2"
algo = "amostm"
pop = 50
evals = 15000
reps = 5

[mop2_stm]
problem = "MOP2"
algo = "stm"
pop = 50
evals = 15000
reps = 5

[mop2_dra]
problem = "MOP2"
algo = "dra"
pop = 50
evals = 15000
reps = 5

[uf4_aoostm]
problem = "UF4"
algo = "aoostm"
pop = 50
evals = 15000
reps = 5

[uf4_dra]
problem = "UF4"
algo = "dra"
pop = 50
evals = 15000
reps = 5
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(env::args().nth(1).unwrap_or_else(|| "batch-out".into()));
    let configs = parse_config(EXPERIMENTS)?;
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let entries = run_batch(&configs, jobs)?;
    let records: Vec<_> = entries.iter().filter_map(|e| e.record()).collect();
    let table = aggregate(&records)?;

    for metric in Metric::ALL {
        println!("\n{metric}");
        let mut problems: Vec<&str> = Vec::new();
        for c in table.cells.iter().filter(|c| c.metric == metric) {
            if !problems.contains(&c.problem.as_str()) {
                problems.push(&c.problem);
            }
        }
        for problem in problems {
            let cells: Vec<_> = table
                .cells
                .iter()
                .filter(|c| c.metric == metric && c.problem == problem)
                .collect();
            let scores = performance_score(&outperform_by_mean(&cells))?;
            for (c, p) in cells.iter().zip(scores) {
                println!(
                    "  {:<6} {:<7} {:.4e} ± {:.2e}  rank {}  P {}",
                    c.problem, c.algorithm, c.mean, c.std, c.rank, p
                );
            }
        }
        for t in table.totals.iter().filter(|t| t.metric == metric) {
            println!(
                "  total {:<7} {:>3}  final rank {}",
                t.algorithm, t.total_rank, t.final_rank
            );
        }
    }
    emit_results(&table, &entries, &out)?;
    println!("\nresults written to {}", out.display());
    Ok(())
}
