//! Per-step random coin schedules.
//!
//! Each step draws `(xi, theta, zeta)` independently and uniformly from closed
//! ranges, in that order. Every realization of an ensemble owns its own
//! ChaCha8 stream whose seed is a fixed bijective mix of the master seed and
//! the realization index (see [`stream_seed`]), so schedules are reproducible
//! bit-for-bit and independent of how realizations are scheduled on threads.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coin::{CoinMatrix, CoinParams};
use crate::error::{Result, WalkError};
use crate::walk::WalkState;

/// Identifier of the seed-derivation scheme, recorded in run metadata.
pub const SEED_MIXER_ID: &str =
    "splitmix64(master + index*0x9E3779B97F4A7C15) -> splitmix64x4 -> ChaCha8";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer; a bijection on `u64`.
fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 64-bit seed of the stream for one realization.
///
/// For a fixed master seed the map from realization index to stream seed is a
/// bijection, so distinct realizations never share a stream.
pub fn stream_seed(master_seed: u64, realization_index: u64) -> u64 {
    splitmix64_mix(master_seed.wrapping_add(realization_index.wrapping_mul(GOLDEN_GAMMA)))
}

fn realization_rng(master_seed: u64, realization_index: u64) -> ChaCha8Rng {
    let mut state = stream_seed(master_seed, realization_index);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        state = state.wrapping_add(GOLDEN_GAMMA);
        chunk.copy_from_slice(&splitmix64_mix(state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

/// Closed interval `[low, high]` of angles in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterRange {
    pub low: f64,
    pub high: f64,
}

impl ParameterRange {
    pub const fn new(low: f64, high: f64) -> Self {
        Self { low, high }
    }

    pub const fn fixed(value: f64) -> Self {
        Self::new(value, value)
    }

    pub fn is_degenerate(&self) -> bool {
        self.low == self.high
    }

    pub fn contains(&self, v: f64) -> bool {
        self.low <= v && v <= self.high
    }

    pub fn validate(&self, field: &'static str) -> Result<()> {
        if !self.low.is_finite() || !self.high.is_finite() {
            return Err(WalkError::invalid(field, "range bounds must be finite"));
        }
        if self.low > self.high {
            return Err(WalkError::invalid(
                field,
                format!("low ({}) > high ({})", self.low, self.high),
            ));
        }
        Ok(())
    }

    /// Maps a 53-bit uniform draw onto the range. A degenerate range always
    /// returns `low` exactly.
    fn sample(&self, rng: &mut impl RngCore) -> f64 {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        (self.low + (self.high - self.low) * u).min(self.high)
    }
}

impl fmt::Display for ParameterRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.low, self.high)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DisorderMode {
    /// Same coin every step.
    Ordered,
    /// Fresh coin parameters every step.
    PerStepRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisorderSpec {
    pub xi_range: ParameterRange,
    pub theta_range: ParameterRange,
    pub zeta_range: ParameterRange,
    pub mode: DisorderMode,
}

impl DisorderSpec {
    /// A spec that always produces `coin`.
    pub fn ordered(coin: CoinParams) -> Self {
        Self {
            xi_range: ParameterRange::fixed(coin.xi),
            theta_range: ParameterRange::fixed(coin.theta),
            zeta_range: ParameterRange::fixed(coin.zeta),
            mode: DisorderMode::Ordered,
        }
    }

    /// Per-step random spec; collapses to `Ordered` when all ranges are degenerate.
    pub fn random(xi: ParameterRange, theta: ParameterRange, zeta: ParameterRange) -> Self {
        let mut spec = Self {
            xi_range: xi,
            theta_range: theta,
            zeta_range: zeta,
            mode: DisorderMode::PerStepRandom,
        };
        if spec.all_degenerate() {
            spec.mode = DisorderMode::Ordered;
        }
        spec
    }

    fn all_degenerate(&self) -> bool {
        self.xi_range.is_degenerate()
            && self.theta_range.is_degenerate()
            && self.zeta_range.is_degenerate()
    }

    pub fn validate(&self) -> Result<()> {
        self.xi_range.validate("xi_range")?;
        self.theta_range.validate("theta_range")?;
        self.zeta_range.validate("zeta_range")?;
        if self.mode == DisorderMode::Ordered && !self.all_degenerate() {
            return Err(WalkError::invalid(
                "mode",
                "ordered mode requires degenerate (low = high) ranges",
            ));
        }
        Ok(())
    }

    /// The fixed coin of an ordered spec.
    pub fn ordered_coin(&self) -> Option<CoinParams> {
        (self.mode == DisorderMode::Ordered)
            .then(|| CoinParams::new(self.xi_range.low, self.theta_range.low, self.zeta_range.low))
    }
}

/// The four canonical regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Identical Hadamard coin `(0, pi/4, 0)` every step.
    HadamardOrdered,
    /// `xi, theta, zeta` each uniform on `[0, pi/2]`.
    FullRange,
    /// `theta` uniform on `[0, pi/4]`; phases on `[0, pi/2]`. Diffusive.
    ThetaLow,
    /// `theta` uniform on `[pi/4, pi/2]`; phases on `[0, pi/2]`. Localizing.
    ThetaHigh,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::HadamardOrdered,
        Preset::FullRange,
        Preset::ThetaLow,
        Preset::ThetaHigh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::HadamardOrdered => "hadamard-ordered",
            Preset::FullRange => "full-range",
            Preset::ThetaLow => "theta-low",
            Preset::ThetaHigh => "theta-high",
        }
    }

    pub fn spec(self) -> DisorderSpec {
        let phase = ParameterRange::new(0.0, FRAC_PI_2);
        match self {
            Preset::HadamardOrdered => DisorderSpec::ordered(CoinParams::hadamard()),
            Preset::FullRange => {
                DisorderSpec::random(phase, ParameterRange::new(0.0, FRAC_PI_2), phase)
            }
            Preset::ThetaLow => {
                DisorderSpec::random(phase, ParameterRange::new(0.0, FRAC_PI_4), phase)
            }
            Preset::ThetaHigh => {
                DisorderSpec::random(phase, ParameterRange::new(FRAC_PI_4, FRAC_PI_2), phase)
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                WalkError::invalid(
                    "preset",
                    format!(
                        "unknown preset `{s}` (expected one of hadamard-ordered, full-range, theta-low, theta-high)"
                    ),
                )
            })
    }
}

/// Looks up a preset by name.
pub fn preset_spec(name: &str) -> Result<DisorderSpec> {
    name.parse::<Preset>().map(Preset::spec)
}

/// Coin parameters for each step, with the seed they were drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoinSchedule {
    pub entries: Vec<CoinParams>,
    pub master_seed: u64,
    pub realization_index: u64,
}

impl CoinSchedule {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Draws `steps` coins for one realization.
pub fn sample_schedule(
    spec: &DisorderSpec,
    steps: usize,
    master_seed: u64,
    realization_index: u64,
) -> Result<CoinSchedule> {
    spec.validate()?;
    let mut rng = realization_rng(master_seed, realization_index);
    let entries = (0..steps)
        .map(|_| {
            let xi = spec.xi_range.sample(&mut rng);
            let theta = spec.theta_range.sample(&mut rng);
            let zeta = spec.zeta_range.sample(&mut rng);
            CoinParams::new(xi, theta, zeta)
        })
        .collect();
    Ok(CoinSchedule {
        entries,
        master_seed,
        realization_index,
    })
}

/// Applies one step per schedule entry, entry 0 first.
pub fn evolve_disordered(initial: &WalkState, schedule: &CoinSchedule) -> Result<WalkState> {
    let mut state = initial.clone();
    evolve_disordered_in_place(&mut state, schedule, |_| {})?;
    Ok(state)
}

/// In-place form of [`evolve_disordered`]; `observe` sees the state after every step.
pub fn evolve_disordered_in_place(
    state: &mut WalkState,
    schedule: &CoinSchedule,
    mut observe: impl FnMut(&WalkState),
) -> Result<()> {
    state.check_capacity(schedule.len())?;
    for params in &schedule.entries {
        let coin = CoinMatrix::from_params(*params)?;
        state.step_in_place(&coin)?;
        observe(state);
    }
    Ok(())
}
