//! Observables of a walk: site probabilities, moments, the classical
//! random-walk baseline, localization length and spreading exponents.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};
use crate::walk::WalkState;

/// Largest tolerated deviation of total probability from 1 before
/// [`distribution_from_state`] refuses the state.
pub const DRIFT_LIMIT: f64 = 1e-6;

/// Probability of each site `x` in `-t_max..=t_max` after `t` steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionDistribution {
    pub t: usize,
    pub t_max: usize,
    /// Indexed by `x + t_max`.
    pub p: Vec<f64>,
}

impl PositionDistribution {
    pub fn new(t: usize, t_max: usize, p: Vec<f64>) -> Result<Self> {
        if p.len() != 2 * t_max + 1 {
            return Err(WalkError::invalid(
                "p",
                format!(
                    "expected {} entries for t_max = {t_max}, got {}",
                    2 * t_max + 1,
                    p.len()
                ),
            ));
        }
        Ok(Self { t, t_max, p })
    }

    /// Unit mass at the origin.
    pub fn point_mass(t_max: usize) -> Self {
        let mut p = vec![0.0; 2 * t_max + 1];
        p[t_max] = 1.0;
        Self { t: 0, t_max, p }
    }

    pub fn prob(&self, x: i64) -> f64 {
        let i = x + self.t_max as i64;
        if i < 0 || i as usize >= self.p.len() {
            0.0
        } else {
            self.p[i as usize]
        }
    }

    /// `(x, p(x))` pairs from `-t_max` to `t_max`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let offset = self.t_max as i64;
        self.p
            .iter()
            .enumerate()
            .map(move |(i, &v)| (i as i64 - offset, v))
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(x, p)| p * x as f64).sum()
    }

    /// Central second moment.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.iter()
            .map(|(x, p)| {
                let d = x as f64 - mean;
                p * d * d
            })
            .sum()
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }
}

/// Summary observables of one distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub t: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
    pub symmetry_deviation: f64,
    /// `std_dev / std_dev(reference)` when an ordered reference run is supplied.
    pub loc_length_ratio: Option<f64>,
    /// `variance / variance(reference)`, reported alongside the length ratio.
    pub variance_ratio: Option<f64>,
}

impl RunMetrics {
    pub fn from_distribution(dist: &PositionDistribution) -> Self {
        let variance = dist.variance();
        Self {
            t: dist.t,
            mean: dist.mean(),
            variance,
            std_dev: variance.sqrt(),
            symmetry_deviation: symmetry_deviation(dist),
            loc_length_ratio: None,
            variance_ratio: None,
        }
    }

    /// Adds the ratios against an ordered reference run's spread.
    pub fn with_reference(mut self, reference_variance: f64) -> Result<Self> {
        self.loc_length_ratio = Some(localization_length(
            self.std_dev,
            reference_variance.sqrt(),
        )?);
        self.variance_ratio = Some(self.variance / reference_variance);
        Ok(self)
    }
}

/// `p(x) = |a0(x)|^2 + |a1(x)|^2`. The result is not renormalized.
pub fn distribution_from_state(state: &WalkState) -> Result<PositionDistribution> {
    let p = state.site_probabilities();
    let total: f64 = p.iter().sum();
    let deviation = (total - 1.0).abs();
    if deviation.is_nan() || deviation > DRIFT_LIMIT {
        return Err(WalkError::NumericalDrift { deviation });
    }
    Ok(PositionDistribution {
        t: state.steps_taken(),
        t_max: state.t_max(),
        p,
    })
}

pub fn variance(dist: &PositionDistribution) -> f64 {
    dist.variance()
}

/// Exact binomial distribution of an unbiased classical walk of `steps` unit steps.
///
/// Weights are built outward from the central binomial coefficient by the
/// ratio recurrence and normalized at the end, so large `steps` neither
/// overflow nor underflow.
pub fn classical_rw_distribution(steps: usize) -> PositionDistribution {
    let t = steps;
    let mut p = vec![0.0; 2 * t + 1];
    // Site x = 2k - t, index x + t = 2k.
    let mut weights = vec![0.0; t + 1];
    let centre = t / 2;
    weights[centre] = 1.0;
    for k in (centre + 1)..=t {
        weights[k] = weights[k - 1] * (t + 1 - k) as f64 / k as f64;
    }
    for k in (0..centre).rev() {
        weights[k] = weights[k + 1] * (k + 1) as f64 / (t - k) as f64;
    }
    let total: f64 = weights.iter().sum();
    for (k, w) in weights.into_iter().enumerate() {
        p[2 * k] = w / total;
    }
    PositionDistribution { t, t_max: t, p }
}

/// Ratio of spreads `sigma_disordered / sigma_ordered`.
pub fn localization_length(sigma_disordered: f64, sigma_ordered: f64) -> Result<f64> {
    if !(sigma_ordered.is_finite() && sigma_ordered > 0.0) {
        return Err(WalkError::invalid(
            "sigma_ordered",
            format!("reference spread must be positive and finite, got {sigma_ordered}"),
        ));
    }
    if !(sigma_disordered.is_finite() && sigma_disordered >= 0.0) {
        return Err(WalkError::invalid(
            "sigma_disordered",
            format!("spread must be non-negative and finite, got {sigma_disordered}"),
        ));
    }
    Ok(sigma_disordered / sigma_ordered)
}

/// Least-squares slope of `ln(variance)` against `ln(t)`.
pub fn spreading_exponent(series: &[(f64, f64)]) -> Result<f64> {
    if series.len() < 3 {
        return Err(WalkError::invalid(
            "series",
            format!("need at least 3 points, got {}", series.len()),
        ));
    }
    if let Some(&(t, v)) = series
        .iter()
        .find(|&&(t, v)| !(t.is_finite() && t >= 1.0 && v.is_finite() && v > 0.0))
    {
        return Err(WalkError::invalid(
            "series",
            format!("points need t >= 1 and variance > 0, got ({t}, {v})"),
        ));
    }
    let n = series.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = series.iter().map(|&(t, v)| (t.ln(), v.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let (sxy, sxx) = lx.iter().zip(&ly).fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    if sxx == 0.0 {
        return Err(WalkError::invalid("series", "all t values are equal"));
    }
    Ok(sxy / sxx)
}

/// `max_x |p(x) - p(-x)|`.
pub fn symmetry_deviation(dist: &PositionDistribution) -> f64 {
    let n = dist.p.len();
    (0..n / 2)
        .map(|i| (dist.p[i] - dist.p[n - 1 - i]).abs())
        .fold(0.0, f64::max)
}
