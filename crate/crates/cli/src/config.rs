//! Strict JSON job configuration.
//!
//! Exactly one coefficient block must be present, selected by `mode`:
//! `physical` carries `alpha`..`epsilon` plus `gamma` and `c`, `reduced`
//! carries `A`, `B`, `C` plus `gamma` and `c`. The method block must match
//! `method`: `gg` takes `case`, `branch`, `C1`, `C2`; `wef` takes
//! `zeta_branch` and `form`. Unknown keys are rejected so coefficient
//! typos fail loudly.

use crate::error::CliError;
use serde::Deserialize;
use travwave::gg_expansion::GgCase;
use travwave::reduction::{reduce, CubicOde, PhysicalSystem};
use travwave::verify::GridSpec;
use travwave::wef_method::WefForm;
use travwave::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Physical,
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Gg,
    Wef,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub mode: Mode,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub eta: Option<f64>,
    pub sigma: Option<f64>,
    pub epsilon: Option<f64>,
    pub gamma: Option<f64>,
    pub c: Option<f64>,
    #[serde(rename = "A")]
    pub linear: Option<f64>,
    #[serde(rename = "B")]
    pub quadratic: Option<f64>,
    #[serde(rename = "C")]
    pub cubic: Option<f64>,
    pub method: Option<Method>,
    pub case: Option<GgCase>,
    pub branch: Option<Sign>,
    #[serde(rename = "C1")]
    pub c1: Option<f64>,
    #[serde(rename = "C2")]
    pub c2: Option<f64>,
    pub zeta_branch: Option<Sign>,
    pub form: Option<WefForm>,
    pub grid: Option<GridSpec>,
}

/// Coefficient data after mode resolution.
pub struct ResolvedSystem {
    /// Present only in physical mode; reduced mode cannot recover `v`.
    pub phys: Option<PhysicalSystem>,
    pub gamma: f64,
    pub c: f64,
    pub ode: CubicOde,
}

/// Method block after validation.
pub enum MethodSpec {
    Gg {
        case: GgCase,
        branch: Sign,
        sinh_coeff: f64,
        cosh_coeff: f64,
    },
    Wef {
        zeta_branch: Sign,
        form: WefForm,
    },
}

fn require(value: Option<f64>, key: &str, mode: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Input(format!("missing key \"{key}\" for mode \"{mode}\"")))
}

fn forbid(value: Option<f64>, key: &str, mode: &str) -> Result<(), CliError> {
    if value.is_some() {
        return Err(CliError::Input(format!(
            "key \"{key}\" is not allowed in mode \"{mode}\""
        )));
    }
    Ok(())
}

pub fn load(path: &std::path::Path) -> Result<JobConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed config {}: {e}", path.display())))
}

impl JobConfig {
    /// Resolves the coefficient block into the reduced ODE.
    pub fn resolve_system(&self) -> Result<ResolvedSystem, CliError> {
        match self.mode {
            Mode::Physical => {
                for (key, value) in [("A", self.linear), ("B", self.quadratic), ("C", self.cubic)] {
                    forbid(value, key, "physical")?;
                }
                let phys = PhysicalSystem {
                    alpha: require(self.alpha, "alpha", "physical")?,
                    beta: require(self.beta, "beta", "physical")?,
                    eta: require(self.eta, "eta", "physical")?,
                    gamma: require(self.gamma, "gamma", "physical")?,
                    sigma: require(self.sigma, "sigma", "physical")?,
                    epsilon: require(self.epsilon, "epsilon", "physical")?,
                    c: require(self.c, "c", "physical")?,
                };
                let ode = reduce(&phys).map_err(|e| CliError::Inadmissible(e.to_string()))?;
                Ok(ResolvedSystem {
                    phys: Some(phys),
                    gamma: phys.gamma,
                    c: phys.c,
                    ode,
                })
            }
            Mode::Reduced => {
                for (key, value) in [
                    ("alpha", self.alpha),
                    ("beta", self.beta),
                    ("eta", self.eta),
                    ("sigma", self.sigma),
                    ("epsilon", self.epsilon),
                ] {
                    forbid(value, key, "reduced")?;
                }
                let gamma = require(self.gamma, "gamma", "reduced")?;
                if gamma == 0.0 {
                    return Err(CliError::Inadmissible("gamma must be nonzero".to_string()));
                }
                let ode = CubicOde::from_coefficients(
                    require(self.linear, "A", "reduced")?,
                    require(self.quadratic, "B", "reduced")?,
                    require(self.cubic, "C", "reduced")?,
                )
                .map_err(|e| CliError::Inadmissible(e.to_string()))?;
                Ok(ResolvedSystem {
                    phys: None,
                    gamma,
                    c: require(self.c, "c", "reduced")?,
                    ode,
                })
            }
        }
    }

    /// Resolves and validates the method block.
    pub fn resolve_method(&self) -> Result<MethodSpec, CliError> {
        let method = self
            .method
            .ok_or_else(|| CliError::Input("missing key \"method\"".to_string()))?;
        match method {
            Method::Gg => {
                if self.zeta_branch.is_some() || self.form.is_some() {
                    return Err(CliError::Input(
                        "keys \"zeta_branch\"/\"form\" are not allowed with method \"gg\""
                            .to_string(),
                    ));
                }
                Ok(MethodSpec::Gg {
                    case: self
                        .case
                        .ok_or_else(|| CliError::Input("missing key \"case\"".to_string()))?,
                    branch: self
                        .branch
                        .ok_or_else(|| CliError::Input("missing key \"branch\"".to_string()))?,
                    sinh_coeff: require(self.c1, "C1", "gg")?,
                    cosh_coeff: require(self.c2, "C2", "gg")?,
                })
            }
            Method::Wef => {
                if self.case.is_some()
                    || self.branch.is_some()
                    || self.c1.is_some()
                    || self.c2.is_some()
                {
                    return Err(CliError::Input(
                        "keys \"case\"/\"branch\"/\"C1\"/\"C2\" are not allowed with method \
                         \"wef\""
                            .to_string(),
                    ));
                }
                Ok(MethodSpec::Wef {
                    zeta_branch: self.zeta_branch.ok_or_else(|| {
                        CliError::Input("missing key \"zeta_branch\"".to_string())
                    })?,
                    form: self
                        .form
                        .ok_or_else(|| CliError::Input("missing key \"form\"".to_string()))?,
                })
            }
        }
    }

    pub fn require_grid(&self) -> Result<GridSpec, CliError> {
        let grid = self
            .grid
            .ok_or_else(|| CliError::Input("missing key \"grid\"".to_string()))?;
        grid.validate()
            .map_err(|e| CliError::Input(e.to_string()))?;
        Ok(grid)
    }
}
