use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stable_moead::error::{Error, Result};
use stable_moead::harness::{aggregate, emit_results, parse_config, run_batch, ExperimentSpec};
use stable_moead::metrics::{score_against, MetricConfig};
use stable_moead::optimizer::RunRecord;
use stable_moead::problems::{native_objectives, read_points, ProblemInstance};

#[derive(Parser)]
#[command(version, about = "Stable-matching MOEA/D experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One optimization run.
    Run(RunArgs),
    /// Every experiment of a TOML config file.
    Batch(BatchArgs),
    /// Score a population file against a problem's front.
    Metrics(MetricsArgs),
    /// Write Pareto-front samples.
    Pf(PfArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value = "aoostm")]
    algo: String,
    #[arg(long)]
    pop: Option<usize>,
    #[arg(long)]
    evals: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    checkpoint_every: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct BatchArgs {
    /// TOML file, one [section] per experiment.
    config: PathBuf,
    /// Repetitions for every experiment (overrides the file).
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct MetricsArgs {
    /// Objective vectors, one comma-separated point per line.
    plot: PathBuf,
    #[arg(long)]
    problem: String,
    #[arg(long)]
    m: Option<usize>,
    /// Front file to score against instead of the built-in sample.
    #[arg(long)]
    pf: Option<PathBuf>,
}

#[derive(Args)]
struct PfArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value = "pf.csv")]
    out: PathBuf,
}

fn instance(problem: &str, m: Option<usize>) -> Result<ProblemInstance> {
    let m = match m {
        Some(m) => m,
        None => native_objectives(problem)?.unwrap_or(2),
    };
    ProblemInstance::new(problem, m)
}

fn batch_and_emit(
    configs: &[stable_moead::harness::RunConfig],
    jobs: usize,
    out: &std::path::Path,
) -> Result<usize> {
    let entries = run_batch(configs, jobs)?;
    let records: Vec<&RunRecord> = entries.iter().filter_map(|e| e.record()).collect();
    emit_results(&aggregate(&records)?, &entries, out)?;
    for e in &entries {
        match &e.outcome {
            Ok(r) => println!(
                "{} seed {}: IGD {:e}  HV {}  ({} ms)",
                e.experiment, e.seed, r.final_scores.igd, r.final_scores.hv, r.wall_ms
            ),
            Err(err) => eprintln!("{} seed {}: {err}", e.experiment, e.seed),
        }
    }
    Ok(entries.iter().filter(|e| e.outcome.is_err()).count())
}

fn execute(cli: Cli) -> Result<usize> {
    match cli.command {
        Command::Run(a) => {
            let spec = ExperimentSpec {
                problem: Some(a.problem),
                m: a.m,
                algo: Some(a.algo),
                pop: a.pop,
                evals: a.evals,
                seed: Some(a.seed),
                reps: Some(1),
                checkpoint_every: a.checkpoint_every,
                ..Default::default()
            };
            let cfg = spec.resolve("run")?;
            batch_and_emit(&[cfg], 1, &a.out)
        }
        Command::Batch(a) => {
            let text = std::fs::read_to_string(&a.config)
                .map_err(|e| Error::Io(format!("{}: {e}", a.config.display())))?;
            let mut configs = parse_config(&text)?;
            if let Some(reps) = a.reps {
                if reps == 0 {
                    return Err(Error::Config("`reps` must be >= 1".into()));
                }
                configs.iter_mut().for_each(|c| c.reps = reps);
            }
            batch_and_emit(&configs, a.jobs, &a.out)
        }
        Command::Metrics(a) => {
            let problem = instance(&a.problem, a.m)?;
            let points = read_points(&a.plot)?;
            let front = match &a.pf {
                Some(p) => read_points(p)?,
                None => problem.reference_front().points.clone(),
            };
            let s = score_against(&points, &front, &MetricConfig::for_problem(&problem))?;
            println!("igd,hv\n{},{}", s.igd, s.hv);
            Ok(0)
        }
        Command::Pf(a) => {
            let pf = instance(&a.problem, a.m)?.sample_pf(a.count)?;
            pf.write_csv(&a.out)?;
            println!("{} points written to {}", pf.len(), a.out.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failed) => {
            eprintln!("{failed} run(s) failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
