//! Fourth-order central finite-difference stencils over partial functions.
//!
//! Profiles are `Fn(f64) -> Option<f64>`; a `None` anywhere in a stencil
//! makes the whole derivative `None`, which the residual drivers count as
//! an excluded point. The `refined` variants apply one Richardson level,
//! combining evaluations at steps `h` and `h/2` to cancel the leading
//! `h⁴` error term:
//!
//! ```text
//! D_ref = (16 D(h/2) − D(h)) / 15.
//! ```

/// First derivative, stencil `(-1, 8, 0, -8, 1)/(12h)` on offsets `±h, ±2h`.
pub fn d1<F: Fn(f64) -> Option<f64>>(f: &F, x: f64, h: f64) -> Option<f64> {
    let fm2 = f(x - 2.0 * h)?;
    let fm1 = f(x - h)?;
    let fp1 = f(x + h)?;
    let fp2 = f(x + 2.0 * h)?;
    Some((fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h))
}

/// Second derivative, stencil `(-1, 16, -30, 16, -1)/(12h²)`.
pub fn d2<F: Fn(f64) -> Option<f64>>(f: &F, x: f64, h: f64) -> Option<f64> {
    let fm2 = f(x - 2.0 * h)?;
    let fm1 = f(x - h)?;
    let f0 = f(x)?;
    let fp1 = f(x + h)?;
    let fp2 = f(x + 2.0 * h)?;
    Some((-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h))
}

/// Third derivative, seven-point stencil
/// `(1/8, -1, 13/8, 0, -13/8, 1, -1/8)/h³` on offsets `−3h … 3h`.
pub fn d3<F: Fn(f64) -> Option<f64>>(f: &F, x: f64, h: f64) -> Option<f64> {
    let fm3 = f(x - 3.0 * h)?;
    let fm2 = f(x - 2.0 * h)?;
    let fm1 = f(x - h)?;
    let fp1 = f(x + h)?;
    let fp2 = f(x + 2.0 * h)?;
    let fp3 = f(x + 3.0 * h)?;
    Some((0.125 * fm3 - fm2 + 1.625 * fm1 - 1.625 * fp1 + fp2 - 0.125 * fp3) / (h * h * h))
}

fn richardson(coarse: f64, fine: f64) -> f64 {
    (16.0 * fine - coarse) / 15.0
}

/// Richardson-extrapolated first derivative.
pub fn d1_refined<F: Fn(f64) -> Option<f64>>(f: &F, x: f64, h: f64) -> Option<f64> {
    Some(richardson(d1(f, x, h)?, d1(f, x, 0.5 * h)?))
}

/// Richardson-extrapolated second derivative.
pub fn d2_refined<F: Fn(f64) -> Option<f64>>(f: &F, x: f64, h: f64) -> Option<f64> {
    Some(richardson(d2(f, x, h)?, d2(f, x, 0.5 * h)?))
}

/// Richardson-extrapolated third derivative.
pub fn d3_refined<F: Fn(f64) -> Option<f64>>(f: &F, x: f64, h: f64) -> Option<f64> {
    Some(richardson(d3(f, x, h)?, d3(f, x, 0.5 * h)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Option<f64> {
        move |x| Some(f(x))
    }

    #[test]
    fn derivatives_of_sin_are_accurate() {
        let f = total(f64::sin);
        let x = 0.7;
        assert!((d1(&f, x, 1e-2).unwrap() - x.cos()).abs() < 1e-9);
        assert!((d2(&f, x, 1e-2).unwrap() + x.sin()).abs() < 1e-8);
        assert!((d3(&f, x, 1e-2).unwrap() + x.cos()).abs() < 1e-7);
        assert!((d1_refined(&f, x, 1e-2).unwrap() - x.cos()).abs() < 1e-12);
        assert!((d2_refined(&f, x, 1e-2).unwrap() + x.sin()).abs() < 1e-11);
        // the d3 floor is eps/h^3, so only ~1e-9 is attainable at h = 1e-2
        assert!((d3_refined(&f, x, 1e-2).unwrap() + x.cos()).abs() < 1e-8);
    }

    #[test]
    fn stencils_are_exact_on_low_degree_polynomials() {
        // 4th-order stencils reproduce derivatives of quartics exactly
        let f = total(|x: f64| 2.0 * x.powi(4) - x.powi(3) + 3.0 * x - 5.0);
        let x = 1.3_f64;
        let h = 0.1;
        let d1_exact = 8.0 * x.powi(3) - 3.0 * x * x + 3.0;
        let d2_exact = 24.0 * x * x - 6.0 * x;
        let d3_exact = 48.0 * x - 6.0;
        assert!((d1(&f, x, h).unwrap() - d1_exact).abs() < 1e-10);
        assert!((d2(&f, x, h).unwrap() - d2_exact).abs() < 1e-9);
        assert!((d3(&f, x, h).unwrap() - d3_exact).abs() < 1e-8);
    }

    #[test]
    fn fourth_order_convergence_ratio() {
        let f = total(|x: f64| (x / 2.0_f64.sqrt()).tanh());
        let x = 0.4;
        let exact = {
            let s = (x / 2.0_f64.sqrt()).cosh();
            1.0 / (2.0_f64.sqrt() * s * s)
        };
        let e1 = (d1(&f, x, 0.2).unwrap() - exact).abs();
        let e2 = (d1(&f, x, 0.1).unwrap() - exact).abs();
        let ratio = e1 / e2;
        assert!((12.0..=20.0).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn excluded_samples_poison_the_stencil() {
        let f = |x: f64| if x > 0.95 { None } else { Some(x * x) };
        assert!(d1(&f, 0.9, 0.1).is_none());
        assert!(d1(&f, 0.5, 0.1).is_some());
        assert!(d3(&f, 0.7, 0.1).is_none());
    }
}
