//! Real-domain elliptic kernel: Jacobi sn/cn/dn, the Weierstrass cubic and
//! its real roots, the modulus relation, and ℘ evaluation.
//!
//! The Weierstrass function ℘(ξ; g₂, g₃) satisfies
//!
//! ```text
//! (℘′)² = 4℘³ − g₂ ℘ − g₃,
//! ```
//!
//! and when the discriminant `g₂³ − 27 g₃² > 0` the cubic `4z³ − g₂z − g₃`
//! has three real roots `e₁ ≥ e₂ ≥ e₃`. On the real axis ℘ then reduces to
//! a Jacobi function:
//!
//! ```text
//! ℘(ξ) = e₃ + (e₁ − e₃) / sn²(√(e₁−e₃) · ξ, m²),   m² = (e₂−e₃)/(e₁−e₃).
//! ```
//!
//! The Jacobi triple is evaluated by the descending Landen transformation
//! (arithmetic-geometric mean chain), accurate to a few ulp for moduli in
//! `[0, 1]` and arguments of moderate size. The modulus is carried as `m²`
//! throughout.

use serde::Serialize;
use thiserror::Error;

/// Errors from the elliptic kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("squared modulus must lie in [0, 1], got {m2}")]
    ModulusOutOfRange { m2: f64 },
    #[error(
        "discriminant g2^3 - 27 g3^2 = {discriminant:.6e} is not positive; \
         fewer than three distinct real roots"
    )]
    NonPositiveDiscriminant { discriminant: f64 },
    #[error("coincident extreme roots e1 = e3 = {e}; the modulus is undefined")]
    CoincidentExtremeRoots { e: f64 },
    #[error("weierstrass p has a pole at the requested point (xi = {xi})")]
    PoleAtZero { xi: f64 },
}

/// Squared modulus of a Jacobi elliptic function, constrained to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticModulus {
    m2: f64,
}

impl EllipticModulus {
    pub fn new(m2: f64) -> Result<Self, EllipticError> {
        if !(0.0..=1.0).contains(&m2) {
            return Err(EllipticError::ModulusOutOfRange { m2 });
        }
        Ok(EllipticModulus { m2 })
    }

    /// The squared modulus `m²`.
    pub fn m2(self) -> f64 {
        self.m2
    }
}

/// Invariants `g₂, g₃` of the Weierstrass cubic together with its three
/// real roots sorted `e₁ ≥ e₂ ≥ e₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeierstrassInvariants {
    pub g2: f64,
    pub g3: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

impl WeierstrassInvariants {
    /// The cubic discriminant `g₂³ − 27 g₃²`.
    pub fn discriminant(&self) -> f64 {
        self.g2.powi(3) - 27.0 * self.g3 * self.g3
    }

    /// Residual of `4z³ − g₂ z − g₃` at `z`.
    pub fn cubic_residual(&self, z: f64) -> f64 {
        4.0 * z.powi(3) - self.g2 * z - self.g3
    }
}

const MAX_AGM_ITERATIONS: usize = 32;
const AGM_TOLERANCE: f64 = 1e-15;

/// Evaluates the Jacobi triple `(sn, cn, dn)(ξ, m²)` by the descending
/// Landen (AGM) chain.
///
/// The degenerate moduli are returned exactly:
///
/// ```text
/// m² = 0:  (sin ξ, cos ξ, 1)
/// m² = 1:  (tanh ξ, sech ξ, sech ξ)
/// ```
pub fn jacobi_sn_cn_dn(xi: f64, m2: f64) -> Result<(f64, f64, f64), EllipticError> {
    if !(0.0..=1.0).contains(&m2) {
        return Err(EllipticError::ModulusOutOfRange { m2 });
    }
    if m2 == 0.0 {
        return Ok((xi.sin(), xi.cos(), 1.0));
    }
    if m2 == 1.0 {
        let sech = 1.0 / xi.cosh();
        return Ok((xi.tanh(), sech, sech));
    }

    // AGM chain: a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n),
    // c_{n+1} = (a_n - b_n)/2, starting from a = 1, b = sqrt(1 - m^2).
    let mut a = [0.0; MAX_AGM_ITERATIONS + 1];
    let mut c = [0.0; MAX_AGM_ITERATIONS + 1];
    a[0] = 1.0;
    c[0] = m2.sqrt();
    let mut b = (1.0 - m2).sqrt();
    let mut n = 0;
    while c[n].abs() > AGM_TOLERANCE * a[n] && n < MAX_AGM_ITERATIONS {
        let an = a[n];
        n += 1;
        a[n] = 0.5 * (an + b);
        c[n] = 0.5 * (an - b);
        b = (an * b).sqrt();
    }

    // Backward amplitude recurrence: phi_N = 2^N a_N xi, then
    // phi_{n-1} = (phi_n + asin((c_n / a_n) sin phi_n)) / 2.
    let mut phi = (1u64 << n) as f64 * a[n] * xi;
    for k in (1..=n).rev() {
        phi = 0.5 * (phi + ((c[k] / a[k]) * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    // 1 - m^2 sn^2 >= 1 - m^2 > 0, so this form has no cancellation; the
    // classical cn/cos(phi_1 - phi_0) route loses digits near the quarter
    // period.
    let dn = (1.0 - m2 * sn * sn).sqrt();
    Ok((sn, cn, dn))
}

/// Solves `4z³ − g₂ z − g₃ = 0` for its three real roots.
///
/// Requires a positive discriminant. The roots come from the closed
/// trigonometric form for the casus irreducibilis, followed by one Newton
/// step each, and are returned sorted descending.
pub fn weierstrass_roots(g2: f64, g3: f64) -> Result<WeierstrassInvariants, EllipticError> {
    let discriminant = g2.powi(3) - 27.0 * g3 * g3;
    if !(discriminant > 0.0) {
        return Err(EllipticError::NonPositiveDiscriminant { discriminant });
    }

    // Normalized form z^3 + p z + q with p = -g2/4, q = -g3/4; three real
    // roots via z_k = 2 sqrt(-p/3) cos(theta/3 - 2 pi k / 3).
    let p = -g2 / 4.0;
    let q = -g3 / 4.0;
    let radius = 2.0 * (-p / 3.0).sqrt();
    let cos_arg = (3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt();
    let theta = cos_arg.clamp(-1.0, 1.0).acos();

    let mut roots = [0.0; 3];
    for (k, root) in roots.iter_mut().enumerate() {
        let z = radius * ((theta - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos();
        // One Newton polish step on 4z^3 - g2 z - g3.
        let f = 4.0 * z.powi(3) - g2 * z - g3;
        let df = 12.0 * z * z - g2;
        *root = if df != 0.0 { z - f / df } else { z };
    }
    roots.sort_by(|x, y| y.partial_cmp(x).unwrap());

    Ok(WeierstrassInvariants {
        g2,
        g3,
        e1: roots[0],
        e2: roots[1],
        e3: roots[2],
    })
}

/// The squared Jacobi modulus induced by a root triple:
/// `m² = (e₂ − e₃) / (e₁ − e₃)`.
pub fn modulus_from_roots(inv: &WeierstrassInvariants) -> Result<EllipticModulus, EllipticError> {
    let span = inv.e1 - inv.e3;
    if span <= 0.0 {
        return Err(EllipticError::CoincidentExtremeRoots { e: inv.e1 });
    }
    let m2 = ((inv.e2 - inv.e3) / span).clamp(0.0, 1.0);
    EllipticModulus::new(m2)
}

/// Evaluates ℘(ξ) on the real axis through its Jacobi reduction
/// `℘(ξ) = e₃ + (e₁ − e₃)/sn²(√(e₁−e₃)·ξ, m²)`.
///
/// ℘ has double poles at ξ = 0 and at the real period lattice; an exact
/// hit reports [`EllipticError::PoleAtZero`]. Arguments close to a pole
/// remain evaluable (sn is proportional to its argument there) with
/// absolute accuracy degrading to roughly 1e−8 in the differential
/// identity.
pub fn weierstrass_p(xi: f64, inv: &WeierstrassInvariants) -> Result<f64, EllipticError> {
    let (scale, m2) = jacobi_reduction(inv)?;
    if xi == 0.0 {
        return Err(EllipticError::PoleAtZero { xi });
    }
    let (sn, _, _) = jacobi_sn_cn_dn(scale * xi, m2)?;
    if sn == 0.0 {
        return Err(EllipticError::PoleAtZero { xi });
    }
    Ok(inv.e3 + (inv.e1 - inv.e3) / (sn * sn))
}

/// Evaluates ℘′(ξ) from the closed form
/// `℘′ = −2 (e₁−e₃)^{3/2} · cn · dn / sn³`.
pub fn weierstrass_p_prime(xi: f64, inv: &WeierstrassInvariants) -> Result<f64, EllipticError> {
    let (scale, m2) = jacobi_reduction(inv)?;
    if xi == 0.0 {
        return Err(EllipticError::PoleAtZero { xi });
    }
    let (sn, cn, dn) = jacobi_sn_cn_dn(scale * xi, m2)?;
    if sn == 0.0 {
        return Err(EllipticError::PoleAtZero { xi });
    }
    Ok(-2.0 * (inv.e1 - inv.e3).powf(1.5) * cn * dn / sn.powi(3))
}

/// Argument scale `√(e₁−e₃)` and squared modulus for the ℘-to-sn reduction.
fn jacobi_reduction(inv: &WeierstrassInvariants) -> Result<(f64, f64), EllipticError> {
    let discriminant = inv.discriminant();
    if !(discriminant > 0.0) {
        return Err(EllipticError::NonPositiveDiscriminant { discriminant });
    }
    let modulus = modulus_from_roots(inv)?;
    Ok(((inv.e1 - inv.e3).sqrt(), modulus.m2()))
}
