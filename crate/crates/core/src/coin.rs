//! Two-state coin operators.
//!
//! A coin is parameterised by three angles `(xi, theta, zeta)` and acts on the
//! internal basis `{|0>, |1>}` as
//!
//! ```text
//!   [ e^{i xi} cos(theta)     e^{i zeta} sin(theta) ]
//!   [ e^{-i zeta} sin(theta)  -e^{-i xi} cos(theta) ]
//! ```
//!
//! `theta` sets the mixing strength; `xi` and `zeta` are phases. With
//! `xi = zeta = 0` and `theta = pi/4` this is the Hadamard coin.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};

/// Angles (radians) of one coin operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinParams {
    pub xi: f64,
    pub theta: f64,
    pub zeta: f64,
}

impl CoinParams {
    pub const fn new(xi: f64, theta: f64, zeta: f64) -> Self {
        Self { xi, theta, zeta }
    }

    /// Unbiased coin `(0, theta, 0)`.
    pub const fn unbiased(theta: f64) -> Self {
        Self::new(0.0, theta, 0.0)
    }

    pub const fn hadamard() -> Self {
        Self::unbiased(std::f64::consts::FRAC_PI_4)
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("xi", self.xi), ("theta", self.theta), ("zeta", self.zeta)] {
            if !v.is_finite() {
                return Err(WalkError::invalid(
                    field,
                    format!("angle must be finite, got {v}"),
                ));
            }
        }
        Ok(())
    }
}

/// A 2x2 complex matrix acting on the coin space, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    pub entries: [[Complex64; 2]; 2],
}

impl CoinMatrix {
    pub fn from_params(params: CoinParams) -> Result<Self> {
        params.validate()?;
        let (s, c) = params.theta.sin_cos();
        let e_xi = Complex64::from_polar(1.0, params.xi);
        let e_zeta = Complex64::from_polar(1.0, params.zeta);
        Ok(Self {
            entries: [
                [e_xi * c, e_zeta * s],
                [e_zeta.conj() * s, -(e_xi.conj() * c)],
            ],
        })
    }

    pub fn hadamard() -> Self {
        Self::from_params(CoinParams::hadamard()).expect("finite angles")
    }

    /// Largest entrywise deviation of `M M^dagger` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.entries;
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let v = m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    #[inline]
    pub(crate) fn apply(&self, a0: Complex64, a1: Complex64) -> (Complex64, Complex64) {
        let m = &self.entries;
        (m[0][0] * a0 + m[0][1] * a1, m[1][0] * a0 + m[1][1] * a1)
    }
}

/// Builds the coin matrix for `params`, rejecting non-finite angles.
pub fn build_coin_matrix(params: CoinParams) -> Result<CoinMatrix> {
    CoinMatrix::from_params(params)
}
