use thiserror::Error;

/// Errors raised by the walk engine, schedule sampler and observables.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// The walk would leave the allocated lattice.
    #[error("capacity exceeded: {requested} steps requested but lattice half-width is {t_max}")]
    Capacity { requested: usize, t_max: usize },

    #[error("numerical drift: total probability deviates from 1 by {deviation:e}")]
    NumericalDrift { deviation: f64 },
}

impl WalkError {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        WalkError::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
