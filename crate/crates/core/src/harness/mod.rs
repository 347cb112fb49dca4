//! Experiment grids over `G(n, p)`, CSV and JSON output, and the invariant
//! battery behind `verify`.

mod config;
mod run;
mod verify;

use thiserror::Error;

use crate::construct::ConstructError;
use crate::graph::GraphError;

pub use config::{ExperimentConfig, Method, Overrides, Param};
pub use run::{
    run_experiment, run_experiment_to_files, run_method, theory_columns, trial_graph, trial_seed, write_csv,
    CellSummary, ExperimentOutput, ExperimentSummary, Stat, TrialRecord, CSV_COLUMNS, SUMMARY_SCHEMA_VERSION,
};
pub use verify::{verify_suite, Check, VerifyLevel, VerifyReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("n = {n}, {param}, {method}, seed {seed}: {source}")]
    Trial {
        n: usize,
        param: String,
        method: Method,
        seed: u64,
        #[source]
        source: ConstructError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
