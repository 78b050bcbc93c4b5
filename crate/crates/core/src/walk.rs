//! State-vector evolution of a two-state particle on a one-dimensional lattice.
//!
//! One step applies the coin to the internal state at every site and then
//! moves the `|0>` component one site left and the `|1>` component one site
//! right. The lattice is finite (`-t_max..=t_max`); walking past its edge is an
//! error rather than a wrap.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coin::{CoinMatrix, CoinParams};
use crate::error::{Result, WalkError};

/// Internal state `cos(delta/2)|0> + sin(delta/2) e^{i phi}|1>` placed at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialStateParams {
    pub delta: f64,
    pub phi: f64,
}

impl InitialStateParams {
    pub const fn new(delta: f64, phi: f64) -> Self {
        Self { delta, phi }
    }

    /// `(|0> + i|1>)/sqrt(2)`, the initial state giving symmetric walks for unbiased coins.
    pub const fn symmetric() -> Self {
        Self::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
    }
}

impl Default for InitialStateParams {
    fn default() -> Self {
        Self::symmetric()
    }
}

/// Amplitudes over (coin basis) x (positions `-t_max..=t_max`).
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    t_max: usize,
    steps_taken: usize,
    /// Coin `|0>` component, indexed by `x + t_max`.
    left: Vec<Complex64>,
    /// Coin `|1>` component, indexed by `x + t_max`.
    right: Vec<Complex64>,
}

impl WalkState {
    /// Builds the initial state at the origin on a lattice of half-width `t_max`.
    pub fn initial(params: InitialStateParams, t_max: usize) -> Result<Self> {
        for (field, v) in [("delta", params.delta), ("phi", params.phi)] {
            if !v.is_finite() {
                return Err(WalkError::invalid(
                    field,
                    format!("angle must be finite, got {v}"),
                ));
            }
        }
        let width = 2 * t_max + 1;
        let mut left = vec![Complex64::new(0.0, 0.0); width];
        let mut right = vec![Complex64::new(0.0, 0.0); width];
        let (s, c) = (params.delta / 2.0).sin_cos();
        left[t_max] = Complex64::new(c, 0.0);
        right[t_max] = Complex64::from_polar(s, params.phi);
        Ok(Self {
            t_max,
            steps_taken: 0,
            left,
            right,
        })
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    /// Number of lattice sites, `2 * t_max + 1`.
    pub fn width(&self) -> usize {
        self.left.len()
    }

    /// Positions covered by the lattice, from `-t_max` to `t_max`.
    pub fn positions(&self) -> impl Iterator<Item = i64> {
        let t = self.t_max as i64;
        -t..=t
    }

    fn index(&self, x: i64) -> Option<usize> {
        let i = x + self.t_max as i64;
        (0..self.width() as i64).contains(&i).then_some(i as usize)
    }

    /// Amplitude of `|coin> (x) |x>`; zero outside the lattice.
    pub fn amplitude(&self, coin: usize, x: i64) -> Complex64 {
        let component = match coin {
            0 => &self.left,
            1 => &self.right,
            _ => panic!("coin index must be 0 or 1, got {coin}"),
        };
        self.index(x)
            .map(|i| component[i])
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Coin `|0>` amplitudes indexed by `x + t_max`.
    pub fn left_component(&self) -> &[Complex64] {
        &self.left
    }

    /// Coin `|1>` amplitudes indexed by `x + t_max`.
    pub fn right_component(&self) -> &[Complex64] {
        &self.right
    }

    /// Amplitudes flattened as `[coin0(x=-t_max..), coin1(x=-t_max..)]`.
    pub fn to_vector(&self) -> Vec<Complex64> {
        self.left.iter().chain(self.right.iter()).copied().collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.left
            .iter()
            .chain(self.right.iter())
            .map(|a| a.norm_sqr())
            .sum()
    }

    /// Probability of each site, `|a0(x)|^2 + |a1(x)|^2`, indexed by `x + t_max`.
    pub fn site_probabilities(&self) -> Vec<f64> {
        self.left
            .iter()
            .zip(&self.right)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .collect()
    }

    /// Total probability, mean position and central variance, summed over the
    /// occupied sites `|x| <= steps_taken` only.
    pub fn position_moments(&self) -> (f64, f64, f64) {
        let s = self.steps_taken;
        let window = (self.t_max - s)..=(self.t_max + s);
        let offset = self.t_max as f64;
        let mut total = 0.0;
        let mut first = 0.0;
        for i in window.clone() {
            let w = self.left[i].norm_sqr() + self.right[i].norm_sqr();
            total += w;
            first += w * (i as f64 - offset);
        }
        let mean = first;
        let mut variance = 0.0;
        for i in window {
            let w = self.left[i].norm_sqr() + self.right[i].norm_sqr();
            let d = i as f64 - offset - mean;
            variance += w * d * d;
        }
        (total, mean, variance)
    }

    /// Applies one coin-then-shift step in place.
    pub fn step_in_place(&mut self, coin: &CoinMatrix) -> Result<()> {
        if self.steps_taken >= self.t_max {
            return Err(WalkError::Capacity {
                requested: self.steps_taken + 1,
                t_max: self.t_max,
            });
        }
        let s = self.steps_taken;
        // Occupied sites are |x| <= s, i.e. indices t_max - s ..= t_max + s.
        let lo = self.t_max - s;
        let hi = self.t_max + s;
        let zero = Complex64::new(0.0, 0.0);
        // Sweep left to right. The |0> part lands on i - 1, which has already
        // been read; the |1> part lands on i + 1, which has not, so it is
        // carried one iteration.
        let mut carry = zero;
        for i in lo..=hi {
            let (a0, a1) = coin.apply(self.left[i], self.right[i]);
            self.left[i - 1] = a0;
            self.right[i] = carry;
            carry = a1;
        }
        self.left[hi] = zero;
        self.right[hi + 1] = carry;
        self.steps_taken += 1;
        Ok(())
    }

    /// Value-returning form of [`WalkState::step_in_place`].
    pub fn step(&self, coin: &CoinMatrix) -> Result<Self> {
        let mut next = self.clone();
        next.step_in_place(coin)?;
        Ok(next)
    }

    /// Applies the same coin `steps` times.
    pub fn evolve_ordered(&self, coin: CoinParams, steps: usize) -> Result<Self> {
        let matrix = CoinMatrix::from_params(coin)?;
        self.check_capacity(steps)?;
        let mut state = self.clone();
        for _ in 0..steps {
            state.step_in_place(&matrix)?;
        }
        Ok(state)
    }

    pub(crate) fn check_capacity(&self, steps: usize) -> Result<()> {
        if self.steps_taken + steps > self.t_max {
            return Err(WalkError::Capacity {
                requested: self.steps_taken + steps,
                t_max: self.t_max,
            });
        }
        Ok(())
    }
}

/// Builds the initial state at the origin; see [`WalkState::initial`].
pub fn build_initial_state(params: InitialStateParams, t_max: usize) -> Result<WalkState> {
    WalkState::initial(params, t_max)
}

/// One coin-then-shift step.
pub fn step(state: &WalkState, coin: &CoinMatrix) -> Result<WalkState> {
    state.step(coin)
}

/// `steps` applications of the same coin.
pub fn evolve_ordered(initial: &WalkState, coin: CoinParams, steps: usize) -> Result<WalkState> {
    initial.evolve_ordered(coin, steps)
}
