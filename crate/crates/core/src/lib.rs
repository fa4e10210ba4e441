//! Decomposition-based multi-objective evolution with stable-matching
//! environmental selection.
//!
//! Each generation, offspring and parents compete for the subproblems defined
//! by a set of weight vectors. Subproblems rank solutions by their normalized
//! Tchebycheff value; solutions rank subproblems by perpendicular distance to
//! the weight direction. Selection then solves a two-sided matching: one-one
//! with adaptively truncated solution lists ([`selection::selection_aoostm`])
//! or many-one with a common quota ([`selection::selection_amostm`]).
//!
//! The matching engines in [`matching`] know nothing about optimization and
//! can be used on their own. [`problems`] carries the UF, MOP and WFG suites
//! with reference fronts, [`metrics`] scores populations by IGD and
//! hypervolume, and [`harness`] runs seeded batches from TOML files.

pub mod decomposition;
pub mod error;
pub mod harness;
pub mod matching;
pub mod metrics;
pub mod optimizer;
pub mod problems;
pub mod selection;
pub mod variation;
