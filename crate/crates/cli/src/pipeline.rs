//! Solution construction shared by the `solve` and `verify` commands.

use crate::config::{MethodSpec, ResolvedSystem};
use crate::error::CliError;
use serde_json::json;
use travwave::gg_expansion::{profile_u as gg_profile_u, solve_ansatz, GgError, GgSolution};
use travwave::reduction::v_from_u;
use travwave::wef_method::{profile_u as wef_profile_u, solve_wef, WefError, WefForm, WefSolution};

/// A constructed wave with everything needed to evaluate and verify it.
pub struct Constructed {
    pub solution: SolutionKind,
    /// JSON parameter report for the solution.
    pub report: serde_json::Value,
    /// Warnings worth surfacing on stderr (constraint defects and the like).
    pub warnings: Vec<String>,
}

pub enum SolutionKind {
    Gg(GgSolution),
    Wef { sol: WefSolution, form: WefForm },
}

pub fn construct(system: &ResolvedSystem, method: &MethodSpec) -> Result<Constructed, CliError> {
    match method {
        MethodSpec::Gg {
            case,
            branch,
            sinh_coeff,
            cosh_coeff,
        } => {
            let sol = solve_ansatz(
                &system.ode,
                system.gamma,
                *case,
                *branch,
                *sinh_coeff,
                *cosh_coeff,
            )
            .map_err(|e| match e {
                GgError::Inadmissible { .. } | GgError::NegativeDiscriminant { .. } => {
                    CliError::Inadmissible(e.to_string())
                }
                other => CliError::Input(other.to_string()),
            })?;
            let constraint = sol.constraint_residual(&system.ode, system.gamma);
            let mut warnings = Vec::new();
            if constraint.abs() > 1e-12 {
                warnings.push(format!(
                    "constraint residual {constraint:.6e} is nonzero (c3 != 0); the \
                     constructed wave does not solve the governing equations exactly"
                ));
            }
            let report = json!({
                "method": "gg",
                "ode": system.ode,
                "gamma": system.gamma,
                "c": system.c,
                "solution": sol,
                "constraint_residual": constraint,
                "pole_xi": sol.pole_xi(),
            });
            Ok(Constructed {
                solution: SolutionKind::Gg(sol),
                report,
                warnings,
            })
        }
        MethodSpec::Wef { zeta_branch, form } => {
            let sol = solve_wef(&system.ode, system.gamma, *zeta_branch).map_err(|e| match e {
                WefError::ComplexZeta { .. } | WefError::ZeroAmplitude | WefError::GammaZero => {
                    CliError::Inadmissible(e.to_string())
                }
                other => CliError::Input(other.to_string()),
            })?;
            let mut warnings = Vec::new();
            if !travwave::wef_method::restriction_satisfied(
                system.ode.linear,
                system.ode.quadratic,
                system.ode.cubic,
            ) {
                warnings.push(format!(
                    "restriction defect 2B^2 - 9AC = {:.6e} is nonzero; the wave solves \
                     the restricted equation, not this system",
                    sol.restriction_residual
                ));
            }
            if *form == WefForm::TanhLimitAsPrinted {
                warnings.push(
                    "the tanh-limit form is evaluated as printed and is not an exact \
                     solution; expect verification to fail"
                        .to_string(),
                );
            }
            let report = json!({
                "method": "wef",
                "ode": system.ode,
                "gamma": system.gamma,
                "c": system.c,
                "form": form,
                "solution": sol,
                "discriminant": sol.invariants.discriminant(),
            });
            Ok(Constructed {
                solution: SolutionKind::Wef { sol, form: *form },
                report,
                warnings,
            })
        }
    }
}

impl Constructed {
    /// The wave over the traveling coordinate, `None` inside the pole
    /// exclusion zone or wherever evaluation fails.
    pub fn profile_xi<'a>(
        &'a self,
        system: &'a ResolvedSystem,
        exclusion_radius: f64,
    ) -> impl Fn(f64) -> Option<f64> + 'a {
        move |xi: f64| match &self.solution {
            SolutionKind::Gg(sol) => {
                if let Some(pole) = sol.pole_xi() {
                    if (xi - pole).abs() < exclusion_radius {
                        return None;
                    }
                }
                gg_profile_u(sol, &system.ode, xi).ok()
            }
            SolutionKind::Wef { sol, form } => wef_profile_u(sol, *form, xi).ok(),
        }
    }

    /// The wave over `(x, t)`.
    pub fn profile_xt<'a>(
        &'a self,
        system: &'a ResolvedSystem,
        exclusion_radius: f64,
    ) -> impl Fn(f64, f64) -> Option<f64> + 'a {
        let profile = self.profile_xi(system, exclusion_radius);
        let c = system.c;
        move |x: f64, t: f64| profile(x - c * t)
    }

    /// The second field `v(u)`, available only in physical mode.
    pub fn v_of_u(&self, system: &ResolvedSystem, u: f64) -> Option<f64> {
        system.phys.as_ref().and_then(|p| v_from_u(p, u).ok())
    }
}
