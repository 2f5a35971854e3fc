//! The Delaunay family: solutions `u_ε(t)` of
//! `u'' - (n-2)²/4 u + n(n-2)/4 u^{(n+2)/(n-2)} = 0`
//! on the cylinder, the conserved energy, the periods in the cylinder and
//! geodesic coordinates, and the nonlinear operator linearized later on.

mod function;
mod orbit;
mod oracle;

pub use function::{ball_to_cylinder, cylinder_to_ball, to_ball, Coordinate, CylinderFunction};
pub use orbit::{solve_orbit, solve_orbit_with_floor, OrbitState, OrbitSummary, PeriodicOrbit, DEFAULT_EPS_FLOOR};
pub use oracle::{period_r_oracle, period_t_oracle, u_max_for};

use crate::{Error, Result};

pub(crate) fn check_dimension(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidDimension { n });
    }
    Ok(())
}

/// Exponents that recur throughout: `(n+2)/(n-2)`, `2n/(n-2)`, `4/(n-2)`,
/// `2/(n-2)` and the coefficients of the ODE.
#[derive(Debug, Clone, Copy)]
pub struct Powers {
    pub n: f64,
    /// (n-2)²/4
    pub a: f64,
    /// n(n-2)/4
    pub b: f64,
    /// (n+2)/(n-2)
    pub crit: f64,
    /// 2n/(n-2)
    pub q: f64,
    /// 4/(n-2)
    pub conf: f64,
    /// 2/(n-2)
    pub geo: f64,
}

impl Powers {
    pub fn new(n: usize) -> Self {
        let nf = n as f64;
        let m = nf - 2.0;
        Self {
            n: nf,
            a: m * m / 4.0,
            b: nf * m / 4.0,
            crit: (nf + 2.0) / m,
            q: 2.0 * nf / m,
            conf: 4.0 / m,
            geo: 2.0 / m,
        }
    }

    /// Right-hand side of `v' = f(u)`.
    pub fn force(&self, u: f64) -> f64 {
        self.a * u - self.b * u.powf(self.crit)
    }

    /// `f'(u)`, the coefficient of the variational equation.
    pub fn force_derivative(&self, u: f64) -> f64 {
        self.a - self.b * self.crit * u.powf(self.conf)
    }

    /// `U(u) = H(u, 0)`.
    pub fn potential(&self, u: f64) -> f64 {
        0.5 * self.a * (u.powf(self.q) - u * u)
    }
}

/// The cylinder equilibrium `ū = ((n-2)/n)^{(n-2)/4}`.
pub fn equilibrium_ubar(n: usize) -> Result<f64> {
    check_dimension(n)?;
    let nf = n as f64;
    Ok(((nf - 2.0) / nf).powf((nf - 2.0) / 4.0))
}

/// The conserved energy `H(u, v) = v²/2 + (n-2)²/8 (u^{2n/(n-2)} - u²)`.
pub fn hamiltonian(n: usize, u: f64, v: f64) -> f64 {
    0.5 * v * v + Powers::new(n).potential(u)
}

/// The homoclinic orbit `u₀(t) = (cosh t)^{(2-n)/2}` on the level `H = 0`.
pub fn homoclinic_u0(n: usize, t: f64) -> f64 {
    t.cosh().powf((2.0 - n as f64) / 2.0)
}

/// `u₀'(t)`.
pub fn homoclinic_u0_derivative(n: usize, t: f64) -> f64 {
    let e = (2.0 - n as f64) / 2.0;
    e * t.cosh().powf(e - 1.0) * t.sinh()
}

/// Exact `n = 4` Delaunay solution in the geodesic coordinate,
/// `u_ε(r) = sqrt(1/2 + (1/2 - ε²) cos 2r)`, maximal at `r = 0`.
pub fn closed_form_n4(eps: f64, r: f64) -> Result<f64> {
    let ubar = equilibrium_ubar(4)?;
    if !(eps > 0.0 && eps <= ubar * (1.0 + 1e-15)) {
        return Err(Error::EpsOutOfRange { eps, ubar });
    }
    Ok((0.5 + (0.5 - eps * eps) * (2.0 * r).cos()).max(0.0).sqrt())
}

/// `Q(v) = n(n-2)/4 ((1+v)^{(n+2)/(n-2)} - 1 - (n+2)/(n-2) v)`.
pub fn quadratic_remainder(n: usize, v: f64) -> f64 {
    let p = Powers::new(n);
    // (1+v)^c - 1 evaluated without cancellation for small v
    let head = (p.crit * v.ln_1p()).exp_m1();
    p.b * (head - p.crit * v)
}

/// Mode-0 nonlinear operator `N_ε(v) = Δ_ε v + n v + Q(v)` applied to
/// rotationally symmetric samples of `v` on a uniform cylinder grid.
///
/// Derivatives are eighth-order central differences, so the result is
/// defined on the grid shrunk by four points at each end.
pub fn nonlinear_residual(orbit: &PeriodicOrbit, v: &CylinderFunction) -> Result<CylinderFunction> {
    if v.coordinate() != Coordinate::Cylinder {
        return Err(Error::InvalidArgument("nonlinear residual needs cylinder samples".into()));
    }
    if let Some(j) = v.mode() {
        if j != 0 {
            return Err(Error::ModeMismatch { left: j, right: 0 });
        }
    }
    if let Some(bad) = v.values().iter().find(|x| !(1.0 + **x > 0.0)) {
        return Err(Error::NonPositive { what: "1 + v", value: 1.0 + bad });
    }
    let n = orbit.n();
    let p = Powers::new(n);
    let (d1, d2) = v.central_derivatives()?;
    let mut values = Vec::with_capacity(d1.len());
    let mut points = Vec::with_capacity(d1.len());
    for (k, (&dv, &ddv)) in d1.iter().zip(&d2).enumerate() {
        let i = k + 4;
        let t = v.points()[i];
        let s = orbit.state(t);
        let w = s.u.powf(-p.conf);
        let lap = w * ddv + 2.0 * s.v * s.u.powf(-p.crit) * dv;
        let x = v.values()[i];
        points.push(t);
        values.push(lap + p.n * x + quadratic_remainder(n, x));
    }
    CylinderFunction::new(Coordinate::Cylinder, points, values, Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ubar_values() {
        assert!((equilibrium_ubar(4).unwrap() - 0.5f64.sqrt()).abs() < 1e-16);
        assert!((equilibrium_ubar(3).unwrap() - 0.7598356856515925).abs() < 1e-15);
        assert!((equilibrium_ubar(6).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(equilibrium_ubar(2).is_err());
    }

    #[test]
    fn hamiltonian_values() {
        assert!((hamiltonian(4, 0.5f64.sqrt(), 0.0) + 0.125).abs() < 1e-15);
        for n in 3..8 {
            assert_eq!(hamiltonian(n, 1.0, 0.0), 0.0);
        }
        // 0.1²/2 + (0.3⁴ - 0.3²)/2 = 0.005 + (0.0081 - 0.09)/2
        assert!((hamiltonian(4, 0.3, 0.1) - (0.005 - 0.04095)).abs() < 1e-15);
    }

    #[test]
    fn ubar_is_the_energy_minimum() {
        for n in 3..8 {
            let p = Powers::new(n);
            let ubar = equilibrium_ubar(n).unwrap();
            assert!(p.force(ubar).abs() < 1e-15);
            assert!(p.potential(ubar) < p.potential(ubar * 0.999));
            assert!(p.potential(ubar) < p.potential(ubar * 1.001));
        }
    }

    #[test]
    fn homoclinic_on_zero_level() {
        assert_eq!(homoclinic_u0(5, 0.0), 1.0);
        assert!((homoclinic_u0(4, 1.0) - 0.648_054_273_663_885_4).abs() < 1e-15);
        for n in 3..7 {
            for &t in &[0.5, 1.3, 2.7] {
                let h = hamiltonian(n, homoclinic_u0(n, t), homoclinic_u0_derivative(n, t));
                assert!(h.abs() < 1e-12, "n={n} t={t} H={h}");
            }
        }
    }

    #[test]
    fn closed_form_turning_points() {
        for &eps in &[0.1, 0.4, 0.7] {
            assert!((closed_form_n4(eps, std::f64::consts::FRAC_PI_2).unwrap() - eps).abs() < 1e-15);
            assert!((closed_form_n4(eps, 0.0).unwrap() - (1.0 - eps * eps).sqrt()).abs() < 1e-15);
        }
        assert!(closed_form_n4(0.8, 0.0).is_err());
    }

    #[test]
    fn quadratic_remainder_vanishes_to_second_order() {
        for n in 3..7 {
            assert_eq!(quadratic_remainder(n, 0.0), 0.0);
            let r = quadratic_remainder(n, 1e-4) / 1e-8;
            let p = Powers::new(n);
            let expected = p.b * p.crit * (p.crit - 1.0) / 2.0;
            assert!((r - expected).abs() < 1e-3 * expected);
        }
    }
}
