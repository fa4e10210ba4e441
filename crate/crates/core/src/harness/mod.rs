//! Experiment driver: configuration, batch execution, aggregation and
//! result files.

pub mod aggregate;
pub mod batch;
pub mod config;
pub mod output;

pub use aggregate::{
    aggregate, outperform_by_mean, performance_score, problem_label, Metric, ResultTable,
};
pub use batch::{run_batch, BatchEntry};
pub use config::{parse_config, ExperimentSpec, RunConfig, DEFAULT_REPS};
pub use output::{config_hash, emit_results, plot_file_name};
