//! Experiment runner for disordered quantum walks: flag and config parsing,
//! single runs, ensembles, figure recipes, and CSV/JSON output with
//! provenance metadata.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{parse_config, ExperimentConfig, Format, Recipe};
pub use error::CliError;
pub use run::{run_experiment, RunOutcome};
