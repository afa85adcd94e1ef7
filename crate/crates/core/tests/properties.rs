//! Property tests over randomized coefficients and arguments.

use proptest::prelude::*;
use travwave::elliptic::{jacobi_sn_cn_dn, modulus_from_roots, weierstrass_roots};
use travwave::gg_expansion::{g_over_g, profile_u, solve_ansatz, GgCase};
use travwave::reduction::{reduce, v_from_u, CubicOde, PhysicalSystem};
use travwave::wef_method::{profile_u as wef_profile_u, solve_wef, WefForm};
use travwave::Sign;

fn nonzero(range: std::ops::Range<f64>) -> impl Strategy<Value = f64> {
    (range, prop::bool::ANY).prop_map(|(magnitude, flip)| if flip { -magnitude } else { magnitude })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn jacobi_identities(xi in -12.0..12.0f64, m2 in 0.0..=1.0f64) {
        let (sn, cn, dn) = jacobi_sn_cn_dn(xi, m2).unwrap();
        prop_assert!((sn * sn + cn * cn - 1.0).abs() < 1e-12);
        prop_assert!((dn * dn + m2 * sn * sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn root_triples_round_trip(e1 in 0.2..3.0f64, e2_frac in -0.9..0.9f64) {
        // pick e2 strictly between -e1/2 and e1 so the triple is distinct
        let e2 = -0.5 * e1 + (e1 - -0.5 * e1) * (0.5 + 0.5 * e2_frac) * 0.98 + 0.005;
        let e3 = -e1 - e2;
        prop_assume!(e1 > e2 + 1e-3 && e2 > e3 + 1e-3);
        let g2 = -4.0 * (e1 * e2 + e1 * e3 + e2 * e3);
        let g3 = 4.0 * e1 * e2 * e3;
        let inv = weierstrass_roots(g2, g3).unwrap();
        prop_assert!((inv.e1 - e1).abs() < 1e-10);
        prop_assert!((inv.e2 - e2).abs() < 1e-10);
        prop_assert!((inv.e3 - e3).abs() < 1e-10);
        let m2 = modulus_from_roots(&inv).unwrap().m2();
        prop_assert!((0.0..=1.0).contains(&m2));
    }

    #[test]
    fn depressed_form_reproduces_the_cubic(
        a in -5.0..5.0f64,
        b in -5.0..5.0f64,
        c in nonzero(0.1..5.0),
    ) {
        let ode = CubicOde::from_coefficients(a, b, c).unwrap();
        // matching coefficients of c2 (u - delta)^3 + c1 (u - delta) + c3
        let d = -ode.shift;
        prop_assert!((3.0 * ode.shifted_cubic * d - b).abs() < 1e-12 * b.abs().max(1.0));
        prop_assert!(
            (3.0 * ode.shifted_cubic * d * d + ode.shifted_linear - a).abs()
                < 1e-11 * a.abs().max(1.0)
        );
        prop_assert!(
            (ode.shifted_cubic * d.powi(3) + ode.shifted_linear * d + ode.shifted_constant).abs()
                < 1e-10
        );
    }

    #[test]
    fn integrated_relation_vanishes(
        sigma in nonzero(0.1..4.0),
        epsilon in nonzero(0.1..4.0),
        c in -4.0..4.0f64,
        u in -6.0..6.0f64,
    ) {
        let phys = PhysicalSystem {
            alpha: 0.0, beta: -3.0, eta: 0.0, gamma: 1.0,
            sigma, epsilon, c,
        };
        let v = v_from_u(&phys, u).unwrap();
        let relation = -c + sigma * u + 0.5 * epsilon * v;
        prop_assert!(relation.abs() <= 8.0 * f64::EPSILON * (c.abs() + (sigma * u).abs() + 1.0));
    }

    #[test]
    fn reduction_identities_for_random_systems(
        alpha in -2.0..2.0f64,
        beta in nonzero(0.5..5.0),
        eta in -3.0..3.0f64,
        sigma in nonzero(0.2..2.0),
        epsilon in nonzero(0.5..2.0),
        c in -3.0..3.0f64,
    ) {
        let phys = PhysicalSystem { alpha, beta, eta, gamma: 1.0, sigma, epsilon, c };
        let Ok(ode) = reduce(&phys) else { return Ok(()); };
        let (a, b, cc) = (ode.linear, ode.quadratic, ode.cubic);
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(1.0);
        prop_assert!(rel(ode.shift, -b / (3.0 * cc)) < 1e-12);
        prop_assert!(rel(ode.shifted_cubic, cc) < 1e-12);
        prop_assert!(rel(3.0 * cc * ode.shifted_linear, 3.0 * a * cc - b * b) < 1e-12);
        prop_assert!(
            rel(27.0 * cc * cc * ode.shifted_constant, 2.0 * b.powi(3) - 9.0 * a * b * cc) < 1e-12
        );
    }

    #[test]
    fn gg_solutions_close_the_algebraic_system(
        c1 in 0.1..3.0f64,
        c2_mag in 0.1..3.0f64,
        gamma in nonzero(0.1..3.0),
        b in -2.0..2.0f64,
        plus in prop::bool::ANY,
    ) {
        // admissibility: c1/gamma > 0 and c2/gamma < 0
        let c1 = c1 * gamma.signum();
        let c2 = -c2_mag * gamma.signum();
        // build a full cubic carrying the prescribed depressed coefficients
        let a = c1 + b * b / (3.0 * c2);
        let ode = CubicOde::from_coefficients(a, b, c2).unwrap();
        prop_assert!((ode.shifted_linear - c1).abs() < 1e-10 * c1.abs().max(1.0));

        let branch = if plus { Sign::Plus } else { Sign::Minus };
        for case in [GgCase::Case1, GgCase::Case2, GgCase::Case3] {
            let sol = solve_ansatz(&ode, gamma, case, branch, 0.0, 1.0).unwrap();
            let residuals = sol.expansion_residuals(&ode, gamma);
            prop_assert!(residuals.cubic_coeff.abs() < 1e-12);
            prop_assert!(residuals.quadratic_coeff.abs() < 1e-12);
            prop_assert!(residuals.linear_coeff.abs() < 1e-12);
            prop_assert!(
                (sol.constraint_residual(&ode, gamma) - ode.shifted_constant).abs() < 1e-12
            );
        }
    }

    #[test]
    fn gg_closed_form_tracks_expansion_route(
        k1 in -2.0..2.0f64,
        k2 in nonzero(0.2..2.0),
        xi in -6.0..6.0f64,
    ) {
        prop_assume!((k1 - k2).abs() > 1e-3 && (k1 + k2).abs() > 1e-3);
        let ode = CubicOde::from_coefficients(1.0, 0.0, -1.0).unwrap();
        for case in [GgCase::Case1, GgCase::Case2, GgCase::Case3] {
            let sol = solve_ansatz(&ode, 1.0, case, Sign::Plus, k1, k2).unwrap();
            let (Ok(direct), Ok(gg)) = (
                profile_u(&sol, &ode, xi),
                g_over_g(sol.lambda, sol.mu, k1, k2, xi),
            ) else { return Ok(()); };
            let via_expansion = sol.a0 + sol.a1 * gg + ode.quadratic / (3.0 * ode.cubic);
            prop_assert!((direct - via_expansion).abs() < 1e-10);
        }
    }

    #[test]
    fn wef_solutions_close_the_algebraic_system(
        a in nonzero(0.1..4.0),
        c_mag in 0.1..4.0f64,
        gamma in nonzero(0.1..4.0),
        plus in prop::bool::ANY,
    ) {
        let c = c_mag * a.signum();
        let cubic = CubicOde::from_coefficients(a, 0.0, c).unwrap();
        let branch = if plus { Sign::Plus } else { Sign::Minus };
        let sol = solve_wef(&cubic, gamma, branch).unwrap();
        let residuals = sol.expansion_residuals(&cubic, gamma);
        prop_assert!(residuals.max_abs() < 1e-12, "{residuals:?}");

        let g2 = sol.invariants.g2;
        let g3 = sol.invariants.g3;
        let ratio = g2.powi(3) / (27.0 * g3 * g3);
        prop_assert!((ratio - 32.0 / 27.0).abs() < 1e-12 * ratio);
        prop_assert!(sol.invariants.discriminant() > 0.0);
    }

    #[test]
    fn wef_forms_agree_pointwise(xi in -4.0..4.0f64, a in 0.5..6.0f64, gamma in 0.2..3.0f64) {
        let cubic = CubicOde::from_coefficients(a, 0.0, 2.0).unwrap();
        let sol = solve_wef(&cubic, gamma, Sign::Plus).unwrap();
        let p = wef_profile_u(&sol, WefForm::PForm, xi).unwrap();
        let jef = wef_profile_u(&sol, WefForm::JefForm, xi).unwrap();
        prop_assert!((p - jef).abs() < 1e-10 * p.abs().max(1.0));
    }
}
