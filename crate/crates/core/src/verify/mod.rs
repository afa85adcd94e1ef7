//! Independent numerical adjudication of constructed profiles.
//!
//! Nothing in this module knows how a profile was built: waves come in as
//! plain evaluators (`Fn(f64) -> Option<f64>` over the traveling
//! coordinate, or `Fn(f64, f64) -> Option<f64>` over `(x, t)`), all
//! derivatives are taken by finite differences, and the reports carry the
//! argmax location of the worst residual for audit. A `None` from an
//! evaluator marks a point excluded, typically a pole neighborhood.
//!
//! Verification is one-sided: no operation ever adjusts a profile to pass.

pub mod fd;

mod evolve;

pub use evolve::{evolve_and_compare, EvolutionReport};

use crate::reduction::{CubicOde, PhysicalSystem};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from the verification drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },
    #[error("all {total} grid points were excluded; nothing to verify")]
    AllPointsExcluded { total: usize },
    #[error("nt = {nt} is too coarse for time derivatives; need nt >= 5")]
    GridTooCoarse { nt: usize },
    #[error("time integration produced a non-finite value at t = {time:.6}")]
    UnstableStep { time: f64 },
    #[error(
        "wave reaches within {min_distance:.3} of the domain boundary before t = {t_final} \
         (need at least {required:.3}); widen the grid"
    )]
    BoundaryContamination {
        min_distance: f64,
        required: f64,
        t_final: f64,
    },
}

/// Uniform space-time sampling grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub nx: usize,
    pub tmin: f64,
    pub tmax: f64,
    pub nt: usize,
    /// Points whose traveling coordinate lies within this distance of a
    /// profile pole are excluded from residual evaluation.
    #[serde(default = "default_pole_exclusion_radius")]
    pub pole_exclusion_radius: f64,
}

fn default_pole_exclusion_radius() -> f64 {
    0.5
}

impl GridSpec {
    pub fn new(
        xmin: f64,
        xmax: f64,
        nx: usize,
        tmin: f64,
        tmax: f64,
        nt: usize,
    ) -> Result<Self, VerifyError> {
        let grid = GridSpec {
            xmin,
            xmax,
            nx,
            tmin,
            tmax,
            nt,
            pole_exclusion_radius: default_pole_exclusion_radius(),
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        if !(self.xmax > self.xmin) {
            return Err(VerifyError::InvalidGrid {
                reason: format!("xmax = {} must exceed xmin = {}", self.xmax, self.xmin),
            });
        }
        if self.nx < 16 {
            return Err(VerifyError::InvalidGrid {
                reason: format!("nx = {} must be at least 16", self.nx),
            });
        }
        if self.nt < 1 {
            return Err(VerifyError::InvalidGrid {
                reason: "nt must be at least 1".to_string(),
            });
        }
        if self.nt > 1 && !(self.tmax > self.tmin) {
            return Err(VerifyError::InvalidGrid {
                reason: format!("tmax = {} must exceed tmin = {}", self.tmax, self.tmin),
            });
        }
        if !(self.pole_exclusion_radius >= 0.0) {
            return Err(VerifyError::InvalidGrid {
                reason: "pole_exclusion_radius must be non-negative".to_string(),
            });
        }
        Ok(())
    }

    /// Spacing of the `nx` uniform x-samples.
    pub fn dx(&self) -> f64 {
        (self.xmax - self.xmin) / (self.nx - 1) as f64
    }

    /// Spacing of the `nt` uniform t-samples (zero when `nt == 1`).
    pub fn dt(&self) -> f64 {
        if self.nt > 1 {
            (self.tmax - self.tmin) / (self.nt - 1) as f64
        } else {
            0.0
        }
    }

    pub fn x(&self, i: usize) -> f64 {
        self.xmin + self.dx() * i as f64
    }

    pub fn t(&self, j: usize) -> f64 {
        self.tmin + self.dt() * j as f64
    }
}

/// Which governing equation a residual report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationId {
    /// `γ u″ + A u + B u² + C u³ = 0`, the full cubic ODE in `u`.
    OdeU,
    /// `γ w″ + c₁ w + c₂ w³ + c₃ = 0`, the depressed ODE in `w`.
    OdeW,
    /// `γ w″ − (A/2) w + C w³ = 0`, the depressed ODE under `2B² = 9AC`.
    OdeWRestricted,
    /// `u_t + α v² v_x + β u² u_x + η u u_x + γ u_xxx = 0`.
    PdeU,
    /// `v_t + σ (u v)_x + ε v v_x = 0`.
    PdeV,
}

/// Outcome of a residual sweep over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub equation: EquationId,
    pub max_abs_residual: f64,
    /// `(x, t)` of the worst residual; `t = 0` for ODE sweeps.
    pub argmax_location: (f64, f64),
    pub points_evaluated: usize,
    pub points_excluded: usize,
    pub tolerance: f64,
    pub pass: bool,
}

fn finish_report(
    equation: EquationId,
    worst: f64,
    argmax: (f64, f64),
    evaluated: usize,
    excluded: usize,
    tolerance: f64,
) -> Result<ResidualReport, VerifyError> {
    if evaluated == 0 {
        return Err(VerifyError::AllPointsExcluded { total: excluded });
    }
    Ok(ResidualReport {
        equation,
        max_abs_residual: worst,
        argmax_location: argmax,
        points_evaluated: evaluated,
        points_excluded: excluded,
        tolerance,
        pass: worst <= tolerance,
    })
}

/// Sweeps the selected ODE residual over the grid's x-samples, treating
/// them as values of the traveling coordinate.
///
/// The second derivative comes from the Richardson-refined fourth-order
/// stencil with step `h = dx`; stencil samples may fall outside
/// `[xmin, xmax]`, where the profile evaluator must still respond.
pub fn ode_residual<F>(
    profile: F,
    cubic: &CubicOde,
    gamma: f64,
    which: EquationId,
    grid: &GridSpec,
    tolerance: f64,
) -> Result<ResidualReport, VerifyError>
where
    F: Fn(f64) -> Option<f64>,
{
    grid.validate()?;
    let h = grid.dx();
    let mut worst = 0.0_f64;
    let mut argmax = (grid.xmin, 0.0);
    let mut evaluated = 0;
    let mut excluded = 0;

    for i in 0..grid.nx {
        let xi = grid.x(i);
        let residual = match (profile(xi), fd::d2_refined(&profile, xi, h)) {
            (Some(value), Some(second)) => match which {
                EquationId::OdeU => cubic.residual_u(gamma, value, second),
                EquationId::OdeW => cubic.residual_w(gamma, value, second),
                EquationId::OdeWRestricted => cubic.residual_w_restricted(gamma, value, second),
                EquationId::PdeU | EquationId::PdeV => {
                    return Err(VerifyError::InvalidGrid {
                        reason: "ode_residual cannot evaluate a PDE equation id".to_string(),
                    })
                }
            },
            _ => {
                excluded += 1;
                continue;
            }
        };
        evaluated += 1;
        if residual.abs() > worst {
            worst = residual.abs();
            argmax = (xi, 0.0);
        }
    }
    finish_report(which, worst, argmax, evaluated, excluded, tolerance)
}

/// Sweeps both PDE residuals over the space-time grid.
///
/// First derivatives in `t`, first and third derivatives in `x`, all by
/// Richardson-refined fourth-order stencils with steps `dx` and `dt`.
pub fn pde_residual<U, V>(
    u: U,
    v: V,
    phys: &PhysicalSystem,
    grid: &GridSpec,
    tolerance: f64,
) -> Result<(ResidualReport, ResidualReport), VerifyError>
where
    U: Fn(f64, f64) -> Option<f64>,
    V: Fn(f64, f64) -> Option<f64>,
{
    grid.validate()?;
    if grid.nt < 5 {
        return Err(VerifyError::GridTooCoarse { nt: grid.nt });
    }
    let hx = grid.dx();
    let ht = grid.dt();

    let mut worst_u = 0.0_f64;
    let mut argmax_u = (grid.xmin, grid.tmin);
    let mut worst_v = 0.0_f64;
    let mut argmax_v = (grid.xmin, grid.tmin);
    let mut evaluated = 0;
    let mut excluded = 0;

    for j in 0..grid.nt {
        let t = grid.t(j);
        for i in 0..grid.nx {
            let x = grid.x(i);
            let u_slice_x = |s: f64| u(s, t);
            let v_slice_x = |s: f64| v(s, t);
            let u_slice_t = |s: f64| u(x, s);
            let v_slice_t = |s: f64| v(x, s);

            let samples = (|| {
                Some((
                    u(x, t)?,
                    v(x, t)?,
                    fd::d1_refined(&u_slice_t, t, ht)?,
                    fd::d1_refined(&u_slice_x, x, hx)?,
                    fd::d3_refined(&u_slice_x, x, hx)?,
                    fd::d1_refined(&v_slice_t, t, ht)?,
                    fd::d1_refined(&v_slice_x, x, hx)?,
                ))
            })();
            let (uv, vv, u_t, u_x, u_xxx, v_t, v_x) = match samples {
                Some(values) => values,
                None => {
                    excluded += 1;
                    continue;
                }
            };
            evaluated += 1;

            let r_u = u_t
                + phys.alpha * vv * vv * v_x
                + phys.beta * uv * uv * u_x
                + phys.eta * uv * u_x
                + phys.gamma * u_xxx;
            let r_v = v_t + phys.sigma * (u_x * vv + uv * v_x) + phys.epsilon * vv * v_x;

            if r_u.abs() > worst_u {
                worst_u = r_u.abs();
                argmax_u = (x, t);
            }
            if r_v.abs() > worst_v {
                worst_v = r_v.abs();
                argmax_v = (x, t);
            }
        }
    }

    let report_u = finish_report(
        EquationId::PdeU,
        worst_u,
        argmax_u,
        evaluated,
        excluded,
        tolerance,
    )?;
    let report_v = finish_report(
        EquationId::PdeV,
        worst_v,
        argmax_v,
        evaluated,
        excluded,
        tolerance,
    )?;
    Ok((report_u, report_v))
}

/// Far-field behavior of a profile at `±ξ_far`.
///
/// A traveling front can only approach a constant that is a root of the
/// cubic `A u + B u² + C u³`, so besides the flatness of the profile the
/// check evaluates that polynomial at both limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub xi_far: f64,
    pub deriv1_left: f64,
    pub deriv1_right: f64,
    pub deriv2_left: f64,
    pub deriv2_right: f64,
    pub cubic_left: f64,
    pub cubic_right: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks flatness and cubic-root limits at `±ξ_far` (report only).
pub fn asymptotic_check<F>(profile: F, cubic: &CubicOde, xi_far: f64) -> AsymptoticReport
where
    F: Fn(f64) -> Option<f64>,
{
    let tolerance = 1e-6;
    let h = 0.05;
    let eval = |xi: f64| -> (f64, f64, f64) {
        let value = profile(xi).unwrap_or(f64::NAN);
        let d1 = fd::d1_refined(&profile, xi, h).unwrap_or(f64::NAN);
        let d2 = fd::d2_refined(&profile, xi, h).unwrap_or(f64::NAN);
        let poly =
            cubic.linear * value + cubic.quadratic * value * value + cubic.cubic * value.powi(3);
        (d1, d2, poly)
    };
    let (d1_l, d2_l, poly_l) = eval(-xi_far);
    let (d1_r, d2_r, poly_r) = eval(xi_far);
    let worst = [d1_l, d1_r, d2_l, d2_r, poly_l, poly_r]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max);
    AsymptoticReport {
        xi_far,
        deriv1_left: d1_l,
        deriv1_right: d1_r,
        deriv2_left: d2_l,
        deriv2_right: d2_r,
        cubic_left: poly_l,
        cubic_right: poly_r,
        tolerance,
        pass: worst.is_finite() && worst < tolerance,
    }
}

/// Result of sampling `u(x + cΔ, t + Δ) − u(x, t)` at random points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslationReport {
    pub samples_requested: usize,
    pub samples_taken: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks that a 2-D evaluator depends on `(x, t)` only through `x − ct`.
///
/// Deterministic: the sample points come from a fixed-seed generator.
pub fn translation_check<F>(profile: F, c: f64, samples: usize) -> TranslationReport
where
    F: Fn(f64, f64) -> Option<f64>,
{
    let tolerance = 1e-12;
    let mut rng = SplitMix64::new(0x5eed_cafe_f00d_0001);
    let mut taken = 0;
    let mut max_deviation = 0.0_f64;
    let mut attempts = 0;
    while taken < samples && attempts < 100 * samples.max(1) {
        attempts += 1;
        let x = -8.0 + 16.0 * rng.next_f64();
        let t = 5.0 * rng.next_f64();
        let shift = -3.0 + 6.0 * rng.next_f64();
        let (Some(base), Some(moved)) = (profile(x, t), profile(x + c * shift, t + shift)) else {
            continue;
        };
        taken += 1;
        max_deviation = max_deviation.max((moved - base).abs());
    }
    TranslationReport {
        samples_requested: samples,
        samples_taken: taken,
        max_deviation,
        tolerance,
        pass: taken > 0 && max_deviation < tolerance,
    }
}

/// Small deterministic generator for sample placement.
pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub(crate) fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::CubicOde;

    fn kink_ode() -> CubicOde {
        CubicOde::from_coefficients(1.0, 0.0, -1.0).unwrap()
    }

    fn kink(xi: f64) -> Option<f64> {
        Some((xi / 2.0_f64.sqrt()).tanh())
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(-10.0, 10.0, 101, 0.0, 5.0, 11).is_ok());
        assert!(GridSpec::new(10.0, -10.0, 101, 0.0, 5.0, 11).is_err());
        assert!(GridSpec::new(-10.0, 10.0, 8, 0.0, 5.0, 11).is_err());
        assert!(GridSpec::new(-10.0, 10.0, 101, 0.0, 5.0, 0).is_err());
    }

    #[test]
    fn kink_satisfies_depressed_ode() {
        let grid = GridSpec::new(-10.0, 10.0, 2001, 0.0, 0.0, 1).unwrap();
        let report = ode_residual(kink, &kink_ode(), 1.0, EquationId::OdeW, &grid, 1e-6).unwrap();
        assert!(report.pass, "max residual {:.3e}", report.max_abs_residual);
        assert!(report.max_abs_residual < 1e-6);
        assert_eq!(report.points_evaluated, 2001);
        assert_eq!(report.points_excluded, 0);
    }

    #[test]
    fn coth_satisfies_depressed_ode_off_pole() {
        let radius = 0.5;
        let singular = |xi: f64| {
            if xi.abs() < radius {
                None
            } else {
                Some(1.0 / (xi / 2.0_f64.sqrt()).tanh())
            }
        };
        let grid = GridSpec::new(-10.0, 10.0, 2001, 0.0, 0.0, 1).unwrap();
        let report =
            ode_residual(singular, &kink_ode(), 1.0, EquationId::OdeW, &grid, 1e-6).unwrap();
        assert!(report.pass, "max residual {:.3e}", report.max_abs_residual);
        assert!(report.points_excluded > 0);
        assert_eq!(report.points_evaluated + report.points_excluded, grid.nx);
    }

    #[test]
    fn equilibrium_constant_has_zero_residual() {
        // u = 1 is a root of u - u^3
        let grid = GridSpec::new(-10.0, 10.0, 101, 0.0, 0.0, 1).unwrap();
        let report = ode_residual(
            |_| Some(1.0),
            &kink_ode(),
            1.0,
            EquationId::OdeW,
            &grid,
            1e-6,
        )
        .unwrap();
        assert_eq!(report.max_abs_residual, 0.0);
    }

    #[test]
    fn all_excluded_is_an_error() {
        let grid = GridSpec::new(-10.0, 10.0, 101, 0.0, 0.0, 1).unwrap();
        let result = ode_residual(|_| None, &kink_ode(), 1.0, EquationId::OdeW, &grid, 1e-6);
        assert!(matches!(result, Err(VerifyError::AllPointsExcluded { .. })));
    }

    #[test]
    fn kink_pair_satisfies_both_pdes() {
        let phys = PhysicalSystem {
            alpha: 0.0,
            beta: -3.0,
            eta: 0.0,
            gamma: 1.0,
            sigma: 1.0,
            epsilon: 2.0,
            c: -1.0,
        };
        let u = |x: f64, t: f64| kink(x + t);
        let v = move |x: f64, t: f64| {
            Some(2.0 * (phys.c - phys.sigma * ((x + t) / 2.0_f64.sqrt()).tanh()) / phys.epsilon)
        };
        let grid = GridSpec::new(-10.0, 10.0, 401, 0.0, 5.0, 51).unwrap();
        let (ru, rv) = pde_residual(u, v, &phys, &grid, 1e-5).unwrap();
        assert!(ru.pass, "u residual {:.3e}", ru.max_abs_residual);
        assert!(rv.pass, "v residual {:.3e}", rv.max_abs_residual);
    }

    #[test]
    fn zero_fields_have_exactly_zero_residual() {
        let phys = PhysicalSystem {
            alpha: 1.0,
            beta: 1.0,
            eta: 1.0,
            gamma: 1.0,
            sigma: 1.0,
            epsilon: 1.0,
            c: 1.0,
        };
        let grid = GridSpec::new(-5.0, 5.0, 64, 0.0, 1.0, 9).unwrap();
        let (ru, rv) =
            pde_residual(|_, _| Some(0.0), |_, _| Some(0.0), &phys, &grid, 1e-6).unwrap();
        assert_eq!(ru.max_abs_residual, 0.0);
        assert_eq!(rv.max_abs_residual, 0.0);
    }

    #[test]
    fn perturbed_kink_is_detected() {
        let phys = PhysicalSystem {
            alpha: 0.0,
            beta: -3.0,
            eta: 0.0,
            gamma: 1.0,
            sigma: 1.0,
            epsilon: 2.0,
            c: -1.0,
        };
        let u = |x: f64, t: f64| kink(x + t).map(|u| u + 0.01 * x.sin());
        let v =
            move |x: f64, t: f64| u(x, t).map(|u| 2.0 * (phys.c - phys.sigma * u) / phys.epsilon);
        let grid = GridSpec::new(-10.0, 10.0, 401, 0.0, 5.0, 51).unwrap();
        let (ru, _) = pde_residual(u, v, &phys, &grid, 1e-6).unwrap();
        assert!(
            ru.max_abs_residual > 1e-3,
            "perturbation went undetected: {:.3e}",
            ru.max_abs_residual
        );
    }

    #[test]
    fn coarse_time_grid_is_rejected() {
        let phys = PhysicalSystem {
            alpha: 0.0,
            beta: -3.0,
            eta: 0.0,
            gamma: 1.0,
            sigma: 1.0,
            epsilon: 2.0,
            c: -1.0,
        };
        let grid = GridSpec::new(-10.0, 10.0, 64, 0.0, 5.0, 4).unwrap();
        assert!(matches!(
            pde_residual(|_, _| Some(0.0), |_, _| Some(0.0), &phys, &grid, 1e-6),
            Err(VerifyError::GridTooCoarse { nt: 4 })
        ));
    }

    #[test]
    fn asymptotics_pass_for_kink_and_fail_for_ramp() {
        let report = asymptotic_check(kink, &kink_ode(), 15.0);
        assert!(report.pass, "{report:?}");

        let constant = asymptotic_check(|_| Some(1.0), &kink_ode(), 15.0);
        assert!(constant.pass);

        let ramp = asymptotic_check(Some, &kink_ode(), 15.0);
        assert!(!ramp.pass);
        assert!(ramp.deriv1_left.abs() > 1e-6);
    }

    #[test]
    fn translation_check_distinguishes_traveling_from_static() {
        let c = -1.0;
        let traveling = |x: f64, t: f64| kink(x - c * t);
        let report = translation_check(traveling, c, 50);
        assert!(report.pass, "{report:?}");
        assert_eq!(report.samples_taken, 50);

        let not_traveling = |x: f64, t: f64| Some(t * x.tanh());
        let report = translation_check(not_traveling, c, 50);
        assert!(!report.pass);

        let static_profile = |x: f64, _t: f64| kink(x);
        let report = translation_check(static_profile, 0.0, 20);
        assert!(report.pass);
    }
}
