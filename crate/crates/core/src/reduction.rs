//! Reduction of the coupled wave system to a cubic traveling-wave ODE.
//!
//! In the traveling frame `ξ = x − ct` the second equation integrates once
//! to an algebraic relation between `v` and `u`; for uniform validity the
//! integration constant must vanish, which pins
//!
//! ```text
//! v = 2 (c − σ u) / ε.
//! ```
//!
//! Eliminating `v` from the first equation and integrating once more gives
//! the cubic ODE
//!
//! ```text
//! γ u″ + A u + B u² + C u³ = 0,
//!
//! A = −(c + 8ασc²/ε³),   B = η/2 + 8ασ²c/ε³,   C = β/3 − 8ασ³/(3ε³),
//! ```
//!
//! and the shift `w = u + B/(3C)` (recorded as `δ = −B/(3C)`, `w = u − δ`)
//! removes the quadratic term:
//!
//! ```text
//! γ w″ + c₁ w + c₂ w³ + c₃ = 0,
//!
//! c₁ = (3AC − B²)/(3C),   c₂ = C,   c₃ = (2B³ − 9ABC)/(27C²).
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coefficients of the coupled wave system together with the wave speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalSystem {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub gamma: f64,
    pub sigma: f64,
    pub epsilon: f64,
    /// Wave speed of the traveling frame `ξ = x − ct`.
    pub c: f64,
}

/// Errors from the reduction stage.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("epsilon must be nonzero (v is recovered by dividing by epsilon)")]
    EpsilonZero,
    #[error("gamma must be nonzero (leading dispersion term)")]
    GammaZero,
    #[error(
        "degenerate cubic: |C| = {cubic:.3e} is below {threshold:.3e}, \
         the depressed form is undefined"
    )]
    DegenerateCubic { cubic: f64, threshold: f64 },
}

impl PhysicalSystem {
    /// Checks the nonzero requirements on `epsilon` and `gamma`.
    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.epsilon == 0.0 {
            return Err(ReductionError::EpsilonZero);
        }
        if self.gamma == 0.0 {
            return Err(ReductionError::GammaZero);
        }
        Ok(())
    }
}

/// The cubic traveling-wave ODE `γ u″ + A u + B u² + C u³ = 0` and its
/// depressed form `γ w″ + c₁ w + c₂ w³ + c₃ = 0`, `w = u + δ`.
///
/// `gamma` is not stored here; the solution methods take it alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicOde {
    /// Coefficient `A` of `u`.
    #[serde(rename = "A")]
    pub linear: f64,
    /// Coefficient `B` of `u²`.
    #[serde(rename = "B")]
    pub quadratic: f64,
    /// Coefficient `C` of `u³`.
    #[serde(rename = "C")]
    pub cubic: f64,
    /// Shift `δ = −B/(3C)`; the depressed variable is `w = u − δ`.
    #[serde(rename = "delta")]
    pub shift: f64,
    /// Coefficient `c₁ = (3AC − B²)/(3C)` of `w`.
    #[serde(rename = "c1")]
    pub shifted_linear: f64,
    /// Coefficient `c₂ = C` of `w³`.
    #[serde(rename = "c2")]
    pub shifted_cubic: f64,
    /// Constant term `c₃ = (2B³ − 9ABC)/(27C²)`.
    #[serde(rename = "c3")]
    pub shifted_constant: f64,
}

impl CubicOde {
    /// Builds the ODE from raw `A`, `B`, `C`, computing the depressed form.
    ///
    /// Fails with [`ReductionError::DegenerateCubic`] when
    /// `|C| < 1e−12 · max(|A|, |B|, 1)`; both `δ` and `c₃` divide by `C`.
    pub fn from_coefficients(
        linear: f64,
        quadratic: f64,
        cubic: f64,
    ) -> Result<Self, ReductionError> {
        let threshold = 1e-12 * linear.abs().max(quadratic.abs()).max(1.0);
        if cubic.abs() < threshold {
            return Err(ReductionError::DegenerateCubic { cubic, threshold });
        }
        let (a, b, c) = (linear, quadratic, cubic);
        Ok(CubicOde {
            linear: a,
            quadratic: b,
            cubic: c,
            shift: -b / (3.0 * c),
            shifted_linear: (3.0 * a * c - b * b) / (3.0 * c),
            shifted_cubic: c,
            shifted_constant: (2.0 * b.powi(3) - 9.0 * a * b * c) / (27.0 * c * c),
        })
    }

    /// Residual of the full cubic `γ u″ + A u + B u² + C u³` given the
    /// profile value and its second derivative.
    pub fn residual_u(&self, gamma: f64, u: f64, u_xx: f64) -> f64 {
        gamma * u_xx + self.linear * u + self.quadratic * u * u + self.cubic * u.powi(3)
    }

    /// Residual of the depressed cubic `γ w″ + c₁ w + c₂ w³ + c₃`.
    pub fn residual_w(&self, gamma: f64, w: f64, w_xx: f64) -> f64 {
        gamma * w_xx
            + self.shifted_linear * w
            + self.shifted_cubic * w.powi(3)
            + self.shifted_constant
    }

    /// Residual of the restricted form `γ w″ − (A/2) w + C w³`, the
    /// depressed ODE specialized to coefficients satisfying `2B² = 9AC`.
    pub fn residual_w_restricted(&self, gamma: f64, w: f64, w_xx: f64) -> f64 {
        gamma * w_xx - 0.5 * self.linear * w + self.cubic * w.powi(3)
    }
}

/// Reduces the physical system to its cubic traveling-wave ODE.
pub fn reduce(phys: &PhysicalSystem) -> Result<CubicOde, ReductionError> {
    phys.validate()?;
    let eps3 = phys.epsilon.powi(3);
    let linear = -(phys.c + 8.0 * phys.alpha * phys.sigma * phys.c * phys.c / eps3);
    let quadratic = phys.eta / 2.0 + 8.0 * phys.alpha * phys.sigma.powi(2) * phys.c / eps3;
    let cubic = phys.beta / 3.0 - 8.0 * phys.alpha * phys.sigma.powi(3) / (3.0 * eps3);
    CubicOde::from_coefficients(linear, quadratic, cubic)
}

/// Recovers the second field from the first: `v = 2 (c − σ u) / ε`.
///
/// The returned value satisfies `−c + σ u + (ε/2) v = 0` to rounding.
pub fn v_from_u(phys: &PhysicalSystem, u: f64) -> Result<f64, ReductionError> {
    if phys.epsilon == 0.0 {
        return Err(ReductionError::EpsilonZero);
    }
    Ok(2.0 * (phys.c - phys.sigma * u) / phys.epsilon)
}
