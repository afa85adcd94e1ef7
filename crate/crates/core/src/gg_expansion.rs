//! Degree-one `G′/G` expansion for the depressed cubic ODE.
//!
//! The ansatz `w(ξ) = a₀ + a₁ (G′/G)` with `G″ + λG′ + μG = 0` turns
//! `γ w″ + c₁ w + c₂ w³ + c₃ = 0` into four polynomial-coefficient
//! equations in powers of `G′/G`:
//!
//! ```text
//! (G′/G)³:  2γa₁ + c₂a₁³                        = 0
//! (G′/G)²:  3γa₁λ + 3c₂a₀a₁²                    = 0
//! (G′/G)¹:  γa₁(λ² + 2μ) + c₁a₁ + 3c₂a₀²a₁      = 0
//! (G′/G)⁰:  γa₁λμ + c₁a₀ + c₂a₀³ + c₃           = residual (reported)
//! ```
//!
//! The first three fix `a₁ = ±√(−2γ/c₂)`, `a₀ = (λ/2)a₁`, and one of
//! `{λ, μ}` per case; the constant equation is a constraint on the ODE
//! coefficients that reduces to `c₃ = 0`. It is reported, never silently
//! enforced: profiles built from coefficients with `c₃ ≠ 0` are returned
//! and left to the verifier to fail.
//!
//! Solved waves map back to the original variable through `u = w + δ`,
//! undoing the `w = u − δ` depression.
//!
//! Only the hyperbolic branch `Δ = λ² − 4μ > 0` is in scope, where
//!
//! ```text
//! G′/G = −λ/2 + (√Δ/2) · (C₁ cosh(√Δ ξ/2) + C₂ sinh(√Δ ξ/2))
//!                        / (C₁ sinh(√Δ ξ/2) + C₂ cosh(√Δ ξ/2)).
//! ```

use crate::reduction::CubicOde;
use crate::Sign;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The three closed-form parameter cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GgCase {
    /// `μ = 0`, `λ = +√(2c₁/γ)`.
    Case1,
    /// `μ = 0`, `λ = −√(2c₁/γ)`.
    Case2,
    /// `λ = 0`, `μ = −c₁/(2γ)`.
    Case3,
}

/// Errors from the expansion method.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GgError {
    #[error(
        "discriminant lambda^2 - 4 mu = {discriminant:.6e} is not positive; \
         the trigonometric branch is out of scope"
    )]
    NegativeDiscriminant { discriminant: f64 },
    #[error("G'/G has a pole at xi = {xi}: |C1 sinh + C2 cosh| = {denominator:.3e}")]
    PoleAtXi { xi: f64, denominator: f64 },
    #[error("inadmissible coefficients: {condition}")]
    Inadmissible { condition: String },
    #[error("profile pole near xi = {xi_pole}: the wave is singular there")]
    PoleAtPoint { xi_pole: f64 },
}

/// A solved expansion: the ansatz parameters together with the integration
/// constants selecting the member of the solution family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GgSolution {
    pub case: GgCase,
    pub branch: Sign,
    pub a0: f64,
    pub a1: f64,
    pub lambda: f64,
    pub mu: f64,
    /// `Δ = λ² − 4μ = 2c₁/γ`.
    #[serde(rename = "Delta")]
    pub discriminant: f64,
    /// Coefficient `C₁` of `sinh` in the linear-ODE solution.
    #[serde(rename = "C1")]
    pub sinh_coeff: f64,
    /// Coefficient `C₂` of `cosh` in the linear-ODE solution.
    #[serde(rename = "C2")]
    pub cosh_coeff: f64,
}

/// Residuals of the four coefficient equations, ordered by the power of
/// `G′/G` they multiply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnsatzResiduals {
    pub cubic_coeff: f64,
    pub quadratic_coeff: f64,
    pub linear_coeff: f64,
    pub constant_coeff: f64,
}

impl AnsatzResiduals {
    pub fn max_abs(&self) -> f64 {
        self.cubic_coeff
            .abs()
            .max(self.quadratic_coeff.abs())
            .max(self.linear_coeff.abs())
            .max(self.constant_coeff.abs())
    }
}

/// Relative threshold for pole detection in the hyperbolic denominator.
fn pole_threshold(sinh_coeff: f64, cosh_coeff: f64) -> f64 {
    1e-12 * (sinh_coeff.abs() + cosh_coeff.abs())
}

/// Evaluates `G′(ξ)/G(ξ)` for the hyperbolic branch.
pub fn g_over_g(lambda: f64, mu: f64, c1: f64, c2: f64, xi: f64) -> Result<f64, GgError> {
    let discriminant = lambda * lambda - 4.0 * mu;
    if !(discriminant > 0.0) {
        return Err(GgError::NegativeDiscriminant { discriminant });
    }
    let half_root = 0.5 * discriminant.sqrt();
    let arg = half_root * xi;
    let numerator = c1 * arg.cosh() + c2 * arg.sinh();
    let denominator = c1 * arg.sinh() + c2 * arg.cosh();
    if denominator.abs() < pole_threshold(c1, c2) {
        return Err(GgError::PoleAtXi { xi, denominator });
    }
    Ok(-0.5 * lambda + half_root * numerator / denominator)
}

/// Solves the ansatz for the given case and branch sign.
///
/// Admissibility requires `−2γ/c₂ > 0` and `2c₁/γ > 0` (so that `a₁` and
/// `Δ` are real) and `C₁ ≠ ±C₂`. The constant-coefficient equation is not
/// enforced here; query it with [`GgSolution::constraint_residual`].
pub fn solve_ansatz(
    cubic: &CubicOde,
    gamma: f64,
    case: GgCase,
    branch: Sign,
    sinh_coeff: f64,
    cosh_coeff: f64,
) -> Result<GgSolution, GgError> {
    let c1 = cubic.shifted_linear;
    let c2 = cubic.shifted_cubic;

    let a1_squared = -2.0 * gamma / c2;
    if !(a1_squared > 0.0) {
        return Err(GgError::Inadmissible {
            condition: format!(
                "-2*gamma/c2 = {a1_squared:.6e} must be positive (gamma and c2 must have \
                 opposite signs)"
            ),
        });
    }
    let delta = 2.0 * c1 / gamma;
    if !(delta > 0.0) {
        return Err(GgError::Inadmissible {
            condition: format!(
                "2*c1/gamma = {delta:.6e} must be positive (gamma and c1 must have the \
                 same sign)"
            ),
        });
    }
    if sinh_coeff == cosh_coeff || sinh_coeff == -cosh_coeff {
        return Err(GgError::Inadmissible {
            condition: format!(
                "integration constants must satisfy C1 != +/-C2, got C1 = {sinh_coeff}, \
                 C2 = {cosh_coeff}"
            ),
        });
    }

    let a1 = branch.factor() * a1_squared.sqrt();
    let root = delta.sqrt();
    let (lambda, mu) = match case {
        GgCase::Case1 => (root, 0.0),
        GgCase::Case2 => (-root, 0.0),
        GgCase::Case3 => (0.0, -c1 / (2.0 * gamma)),
    };
    Ok(GgSolution {
        case,
        branch,
        a0: 0.5 * lambda * a1,
        a1,
        lambda,
        mu,
        discriminant: delta,
        sinh_coeff,
        cosh_coeff,
    })
}

impl GgSolution {
    /// Residuals of the four coefficient equations for this solution.
    pub fn expansion_residuals(&self, cubic: &CubicOde, gamma: f64) -> AnsatzResiduals {
        let (a0, a1, lambda, mu) = (self.a0, self.a1, self.lambda, self.mu);
        let c1 = cubic.shifted_linear;
        let c2 = cubic.shifted_cubic;
        let c3 = cubic.shifted_constant;
        AnsatzResiduals {
            cubic_coeff: 2.0 * gamma * a1 + c2 * a1.powi(3),
            quadratic_coeff: 3.0 * gamma * a1 * lambda + 3.0 * c2 * a0 * a1 * a1,
            linear_coeff: gamma * a1 * (lambda * lambda + 2.0 * mu)
                + c1 * a1
                + 3.0 * c2 * a0 * a0 * a1,
            constant_coeff: gamma * a1 * lambda * mu + c1 * a0 + c2 * a0.powi(3) + c3,
        }
    }

    /// The constant-coefficient equation `γa₁λμ + c₁a₀ + c₂a₀³ + c₃`.
    ///
    /// For every admissible solution the first three terms cancel and the
    /// value equals `c₃`; the wave is an exact ODE solution only when this
    /// vanishes.
    pub fn constraint_residual(&self, cubic: &CubicOde, gamma: f64) -> f64 {
        self.expansion_residuals(cubic, gamma).constant_coeff
    }

    /// Location of the real pole of the profile, if any.
    ///
    /// The hyperbolic denominator `C₁ sinh(qξ) + C₂ cosh(qξ)` vanishes on
    /// the real line exactly when `|C₂| < |C₁|`, at
    /// `ξ* = artanh(−C₂/C₁)/q` with `q = √Δ/2`.
    pub fn pole_xi(&self) -> Option<f64> {
        if self.cosh_coeff.abs() < self.sinh_coeff.abs() {
            let q = 0.5 * self.discriminant.sqrt();
            Some((-self.cosh_coeff / self.sinh_coeff).atanh() / q)
        } else {
            None
        }
    }
}

/// Evaluates the closed-form wave `u(x, t)` for a solved expansion.
pub fn eval_case_solution(
    sol: &GgSolution,
    cubic: &CubicOde,
    c: f64,
    x: f64,
    t: f64,
) -> Result<f64, GgError> {
    profile_u(sol, cubic, x - c * t)
}

/// The wave as a function of the traveling coordinate `ξ = x − ct`.
///
/// All three cases share the rational-in-tanh closed form
///
/// ```text
/// u = ±√(−c₁/c₂) · (C₁ + C₂ T)/(C₁ T + C₂) + δ,
/// T = tanh(√(2c₁/γ) ξ / 2),
/// ```
///
/// which equals `a₀ + a₁ (G′/G) + δ` identically; the two routes use
/// different arithmetic and are cross-checked in tests. The additive
/// constant is `δ = −B/(3C)`: that sign is what makes the wave satisfy
/// the original cubic ODE, and the residual suite pins it down.
pub fn profile_u(sol: &GgSolution, cubic: &CubicOde, xi: f64) -> Result<f64, GgError> {
    let t = (0.5 * sol.discriminant.sqrt() * xi).tanh();
    let numerator = sol.sinh_coeff + sol.cosh_coeff * t;
    let denominator = sol.sinh_coeff * t + sol.cosh_coeff;
    if denominator.abs() < pole_threshold(sol.sinh_coeff, sol.cosh_coeff) {
        return Err(GgError::PoleAtPoint {
            xi_pole: sol.pole_xi().unwrap_or(xi),
        });
    }
    // a1 * sqrt(Delta)/2 = branch * sqrt(-c1/c2)
    let amplitude = 0.5 * sol.a1 * sol.discriminant.sqrt();
    Ok(amplitude * numerator / denominator + cubic.shift)
}
