//! Periods from the energy integral, independent of the ODE integrator.

use super::{equilibrium_ubar, Powers};
use crate::numerics::{brent, integrate_endpoint_singular, Tolerance};
use crate::{Error, Result};

/// The larger turning point: the root of `U(u) = U(ε)` in `(ū, 1)`.
pub fn u_max_for(n: usize, eps: f64) -> Result<f64> {
    let ubar = equilibrium_ubar(n)?;
    if !(eps > 0.0 && eps <= ubar) {
        return Err(Error::EpsOutOfRange { eps, ubar });
    }
    if eps == ubar {
        return Ok(ubar);
    }
    let p = Powers::new(n);
    let level = p.potential(eps);
    let root = brent(|u| p.potential(u) - level, ubar, 1.0, 1e-16, 0.0)?;
    Ok(root)
}

/// `U(x) - U(x + d)` for `x > 0`, accurate when `d` is small relative to `x`.
fn potential_drop(p: &Powers, x: f64, d: f64) -> f64 {
    let rel = d / x;
    // x^q ((1 + rel)^q - 1) and (x + d)² - x² = d (2x + d)
    let high = x.powf(p.q) * (p.q * rel.ln_1p()).exp_m1();
    let low = d * (2.0 * x + d);
    -0.5 * p.a * (high - low)
}

/// `2 ∫_ε^{u_max} w(u) du / sqrt(2 (U(ε) - U(u)))`.
fn energy_integral<W: Fn(f64) -> f64>(n: usize, eps: f64, weight: W) -> Result<f64> {
    let ubar = equilibrium_ubar(n)?;
    if !(eps > 0.0 && eps < ubar) {
        return Err(Error::EpsOutOfRange { eps, ubar });
    }
    let p = Powers::new(n);
    let u_max = u_max_for(n, eps)?;
    let tol = Tolerance::new(1e-14, 1e-13)?;
    let integrand = |u: f64, da: f64, db: f64| {
        let gap = if da <= db {
            potential_drop(&p, eps, da)
        } else {
            // U(ε) = U(u_max), so the gap is U(u_max) - U(u)
            -potential_drop(&p, u_max - db, db)
        };
        if gap <= 0.0 {
            return 0.0;
        }
        weight(u) / (2.0 * gap).sqrt()
    };
    Ok(2.0 * integrate_endpoint_singular(integrand, eps, u_max, &tol)?)
}

/// Period `T(ε)` in the cylinder coordinate by quadrature of the energy
/// integral.
pub fn period_t_oracle(n: usize, eps: f64) -> Result<f64> {
    energy_integral(n, eps, |_| 1.0)
}

/// Period `R(ε)` in the geodesic coordinate, `dr = u^{2/(n-2)} dt`.
pub fn period_r_oracle(n: usize, eps: f64) -> Result<f64> {
    let geo = Powers::new(n).geo;
    energy_integral(n, eps, |u| u.powf(geo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn u_max_on_level_set() {
        for n in 3..7 {
            let p = Powers::new(n);
            for &eps in &[1e-3, 0.1, 0.5] {
                let um = u_max_for(n, eps).unwrap();
                assert!(um < 1.0 && um > equilibrium_ubar(n).unwrap());
                assert!((p.potential(um) - p.potential(eps)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn n4_geodesic_period_is_pi() {
        for &eps in &[0.05, 0.2, 0.5, 0.7] {
            let r = period_r_oracle(4, eps).unwrap();
            assert!((r - PI).abs() < 1e-10, "eps={eps} R={r}");
        }
    }

    #[test]
    fn n4_cylinder_period_matches_elliptic_form() {
        // For n = 4, dt = dr / u(r) with u from the closed form, so
        // T = ∫_0^π dr / sqrt(1/2 + (1/2 - ε²) cos 2r).
        let eps: f64 = 0.5;
        let tol = Tolerance::new(1e-14, 1e-14).unwrap();
        let direct = crate::numerics::adaptive_quadrature(
            |r: f64| 1.0 / (0.5 + (0.5 - eps * eps) * (2.0 * r).cos()).sqrt(),
            0.0,
            PI,
            &tol,
        )
        .unwrap();
        assert!((period_t_oracle(4, eps).unwrap() - direct).abs() < 1e-11);
    }

    #[test]
    fn limits() {
        for n in 3..7 {
            let ubar = equilibrium_ubar(n).unwrap();
            let nf = n as f64;
            let t = period_t_oracle(n, ubar * (1.0 - 1e-4)).unwrap();
            assert!((t - 2.0 * PI / (nf - 2.0).sqrt()).abs() < 1e-2);
            let r = period_r_oracle(n, ubar * (1.0 - 1e-4)).unwrap();
            assert!((r - 2.0 * PI / nf.sqrt()).abs() < 1e-2);
        }
    }
}
