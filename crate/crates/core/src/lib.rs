//! Discrete-time quantum walks on a line with per-step disordered coins.
//!
//! The walk state lives in [`walk`], coins in [`coin`], random coin
//! schedules in [`disorder`], observables in [`analysis`] and ensemble
//! averaging in [`ensemble`].

pub mod analysis;
pub mod coin;
pub mod disorder;
pub mod ensemble;
pub mod error;
pub mod walk;

pub use analysis::{
    classical_rw_distribution, distribution_from_state, localization_length, spreading_exponent,
    symmetry_deviation, variance, PositionDistribution, RunMetrics,
};
pub use coin::{build_coin_matrix, CoinMatrix, CoinParams};
pub use disorder::{
    evolve_disordered, preset_spec, sample_schedule, CoinSchedule, DisorderMode, DisorderSpec,
    ParameterRange, Preset, SEED_MIXER_ID,
};
pub use ensemble::{run_ensemble, EnsembleStats};
pub use error::{Result, WalkError};
pub use walk::{build_initial_state, evolve_ordered, step, InitialStateParams, WalkState};
