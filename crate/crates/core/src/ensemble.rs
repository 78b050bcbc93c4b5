//! Averages over independent disorder realizations.
//!
//! Realizations run in parallel, but each owns its state and random stream
//! and results are reduced in realization-index order, so the statistics do
//! not depend on the thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{distribution_from_state, PositionDistribution};
use crate::disorder::{evolve_disordered_in_place, sample_schedule, DisorderSpec};
use crate::error::{Result, WalkError};
use crate::walk::{InitialStateParams, WalkState};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub realizations: usize,
    pub mean_distribution: PositionDistribution,
    /// Mean over realizations of each final variance.
    pub mean_variance: f64,
    /// Unbiased sample variance of the final variances (0 for one realization).
    pub variance_of_variance: f64,
    /// Mean over realizations of each final standard deviation.
    pub mean_std_dev: f64,
    /// `per_step_variance[t - 1]` is the mean variance after `t` steps.
    pub per_step_variance: Vec<f64>,
    /// `per_step_std_dev[t - 1]` is the mean standard deviation after `t` steps.
    pub per_step_std_dev: Vec<f64>,
    /// Largest `|norm - 1|` seen in any realization after any step.
    pub max_norm_drift: f64,
}

impl EnsembleStats {
    /// Mean variance after `t` steps, `t` in `1..=steps`.
    pub fn variance_at(&self, t: usize) -> Option<f64> {
        t.checked_sub(1)
            .and_then(|i| self.per_step_variance.get(i).copied())
    }

    /// Mean standard deviation after `t` steps, `t` in `1..=steps`.
    pub fn std_dev_at(&self, t: usize) -> Option<f64> {
        t.checked_sub(1)
            .and_then(|i| self.per_step_std_dev.get(i).copied())
    }
}

struct Realization {
    distribution: PositionDistribution,
    variance: f64,
    per_step_variance: Vec<f64>,
    norm_drift: f64,
}

fn run_realization(
    spec: &DisorderSpec,
    initial: InitialStateParams,
    steps: usize,
    master_seed: u64,
    index: u64,
) -> Result<Realization> {
    let schedule = sample_schedule(spec, steps, master_seed, index)?;
    let mut state = WalkState::initial(initial, steps)?;
    let mut per_step_variance = Vec::with_capacity(steps);
    let mut norm_drift = 0.0_f64;
    evolve_disordered_in_place(&mut state, &schedule, |s| {
        let (total, _, variance) = s.position_moments();
        norm_drift = norm_drift.max((total - 1.0).abs());
        per_step_variance.push(variance);
    })?;
    let distribution = distribution_from_state(&state)?;
    let variance = distribution.variance();
    Ok(Realization {
        distribution,
        variance,
        per_step_variance,
        norm_drift,
    })
}

/// Evolves `realizations` independent schedules (indices `0..realizations`)
/// from the same initial state and averages the results.
pub fn run_ensemble(
    spec: &DisorderSpec,
    initial: InitialStateParams,
    steps: usize,
    realizations: usize,
    master_seed: u64,
) -> Result<EnsembleStats> {
    if realizations == 0 {
        return Err(WalkError::invalid(
            "realizations",
            "need at least one realization",
        ));
    }
    spec.validate()?;
    let runs: Vec<Realization> = (0..realizations as u64)
        .into_par_iter()
        .map(|i| run_realization(spec, initial, steps, master_seed, i))
        .collect::<Result<_>>()?;

    let r = realizations as f64;
    let mut p_sum = vec![0.0; 2 * steps + 1];
    let mut var_sum = vec![0.0; steps];
    let mut std_sum = vec![0.0; steps];
    let mut final_var_sum = 0.0;
    let mut final_std_sum = 0.0;
    let mut max_norm_drift = 0.0_f64;
    for run in &runs {
        for (acc, v) in p_sum.iter_mut().zip(&run.distribution.p) {
            *acc += v;
        }
        for ((vs, ss), v) in var_sum
            .iter_mut()
            .zip(std_sum.iter_mut())
            .zip(&run.per_step_variance)
        {
            *vs += v;
            *ss += v.sqrt();
        }
        final_var_sum += run.variance;
        final_std_sum += run.variance.sqrt();
        max_norm_drift = max_norm_drift.max(run.norm_drift);
    }
    let mean_variance = final_var_sum / r;
    let variance_of_variance = if realizations > 1 {
        runs.iter()
            .map(|run| (run.variance - mean_variance).powi(2))
            .sum::<f64>()
            / (r - 1.0)
    } else {
        0.0
    };
    Ok(EnsembleStats {
        realizations,
        mean_distribution: PositionDistribution {
            t: steps,
            t_max: steps,
            p: p_sum.into_iter().map(|v| v / r).collect(),
        },
        mean_variance,
        variance_of_variance,
        mean_std_dev: final_std_sum / r,
        per_step_variance: var_sum.into_iter().map(|v| v / r).collect(),
        per_step_std_dev: std_sum.into_iter().map(|v| v / r).collect(),
        max_norm_drift,
    })
}
