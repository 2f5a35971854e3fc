use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_dimension, equilibrium_ubar, u_max_for, Powers};
use crate::numerics::{brent, find_event, integrate_ivp, Crossing, Tolerance, Trajectory};
use crate::{Error, Result};

/// Smallest ε accepted by [`solve_orbit`]; below it the turning-point
/// integrals lose too many digits.
pub const DEFAULT_EPS_FLOOR: f64 = 1e-6;

/// Relative distance from ū under which ε is treated as the cylinder.
const DEGENERATE_EPS: f64 = 1e-12;

// state layout: u, v, r, δu, δv
const DIM: usize = 5;

/// Point on the orbit, with the ε-derivative of the max-phased family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitState {
    pub t: f64,
    pub u: f64,
    pub v: f64,
    /// geodesic coordinate, `r(0) = 0`
    pub r: f64,
    /// `∂u_ε(t)/∂ε`
    pub du: f64,
    /// `∂v_ε(t)/∂ε`
    pub dv: f64,
}

/// Header data of an orbit, suitable for export.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub n: usize,
    pub eps: f64,
    #[serde(rename = "T")]
    pub period_t: f64,
    #[serde(rename = "R")]
    pub period_r: f64,
    #[serde(rename = "H")]
    pub energy: f64,
    pub u_max: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

/// One Delaunay solution `u_ε` over a full period, phased so that
/// `u(0) = u_max` (hence even in `t`).
///
/// Evaluation at arbitrary `t` goes through the dense output of the single
/// integrated period, extended by periodicity and parity.
#[derive(Debug, Clone)]
pub struct PeriodicOrbit {
    n: usize,
    eps: f64,
    ubar: f64,
    u_max: f64,
    energy: f64,
    period_t: f64,
    period_r: f64,
    /// `T'(ε)` from the variational equations
    period_derivative: f64,
    tol: Tolerance,
    /// `None` for the cylinder `ε = ū`
    trajectory: Option<Trajectory>,
}

/// Orbit, geodesic length and variational equations in one system.
fn orbit_field(p: Powers) -> impl Fn(f64, &[f64], &mut [f64]) + Copy {
    move |_t: f64, y: &[f64], dy: &mut [f64]| {
        let u = y[0];
        dy[0] = y[1];
        dy[1] = p.force(u);
        dy[2] = u.powf(p.geo);
        dy[3] = y[4];
        dy[4] = p.force_derivative(u) * y[3];
    }
}

/// Solve for the Delaunay orbit with minimum `eps`, refusing
/// `eps < DEFAULT_EPS_FLOOR`.
pub fn solve_orbit(n: usize, eps: f64, tol: Tolerance) -> Result<PeriodicOrbit> {
    solve_orbit_with_floor(n, eps, tol, DEFAULT_EPS_FLOOR)
}

pub fn solve_orbit_with_floor(n: usize, eps: f64, tol: Tolerance, floor: f64) -> Result<PeriodicOrbit> {
    check_dimension(n)?;
    let ubar = equilibrium_ubar(n)?;
    if !(eps > 0.0 && eps <= ubar * (1.0 + DEGENERATE_EPS)) {
        return Err(Error::EpsOutOfRange { eps, ubar });
    }
    if eps < floor {
        return Err(Error::EpsBelowFloor { eps, floor });
    }
    let p = Powers::new(n);
    if (ubar - eps).abs() <= DEGENERATE_EPS * ubar {
        return Ok(PeriodicOrbit::cylinder(n, ubar, tol));
    }

    let u_max = u_max_for(n, eps)?;
    // d u_max / dε from U(u_max(ε)) = U(ε), with U' = -f
    let du_max = p.force(eps) / p.force(u_max);
    let y0 = [u_max, 0.0, 0.0, du_max, 0.0];
    let field = orbit_field(p);

    // The first falling zero of v after t = 0 is the next maximum.
    let horizon = 40.0 + 20.0 * (1.0 / eps).ln();
    let hit = find_event(field, &y0, (0.0, horizon), |y| y[1], Crossing::Falling, tol)
        .map_err(|e| Error::PeriodDetection(e.to_string()))?;
    if !(hit.state[0] > ubar) {
        return Err(Error::PeriodDetection(format!(
            "return to v = 0 at t = {} has u = {} below ū",
            hit.t, hit.state[0]
        )));
    }
    let period_t = hit.t;
    let trajectory = integrate_ivp(field, &y0, (0.0, period_t), tol)?;
    let end = trajectory.knot_state(trajectory.len() - 1);
    let period_r = end[2];
    // v_ε(T(ε)) = 0  ⇒  δv(T) + f(u_max) T' = 0
    let period_derivative = -end[4] / p.force(end[0]);

    Ok(PeriodicOrbit {
        n,
        eps,
        ubar,
        u_max,
        energy: p.potential(eps),
        period_t,
        period_r,
        period_derivative,
        tol,
        trajectory: Some(trajectory),
    })
}

impl PeriodicOrbit {
    /// Tolerance used when the caller has no preference; tighter than the
    /// numerics default because everything downstream differentiates the
    /// orbit.
    pub fn default_tolerance() -> Tolerance {
        Tolerance::new(1e-13, 1e-13).expect("positive")
    }

    fn cylinder(n: usize, ubar: f64, tol: Tolerance) -> Self {
        let nf = n as f64;
        Self {
            n,
            eps: ubar,
            ubar,
            u_max: ubar,
            energy: Powers::new(n).potential(ubar),
            period_t: 2.0 * PI / (nf - 2.0).sqrt(),
            period_r: 2.0 * PI / nf.sqrt(),
            period_derivative: 0.0,
            tol,
            trajectory: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn ubar(&self) -> f64 {
        self.ubar
    }

    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    /// `H(ε, 0)`.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Period `T(ε)` in `t`.
    pub fn period(&self) -> f64 {
        self.period_t
    }

    /// Period `R(ε)` in the geodesic coordinate.
    pub fn geodesic_period(&self) -> f64 {
        self.period_r
    }

    /// `T'(ε)`, read off the variational equations at the end of the period.
    pub fn period_derivative(&self) -> f64 {
        self.period_derivative
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn is_cylinder(&self) -> bool {
        self.trajectory.is_none()
    }

    pub fn trajectory(&self) -> Option<&Trajectory> {
        self.trajectory.as_ref()
    }

    pub fn summary(&self) -> OrbitSummary {
        OrbitSummary {
            n: self.n,
            eps: self.eps,
            period_t: self.period_t,
            period_r: self.period_r,
            energy: self.energy,
            u_max: self.u_max,
            abs_tol: self.tol.abs(),
            rel_tol: self.tol.rel(),
        }
    }

    /// Orbit and its ε-derivative at any `t`.
    pub fn state(&self, t: f64) -> OrbitState {
        let p = Powers::new(self.n);
        let Some(traj) = &self.trajectory else {
            // linearization at ū: δu'' = -(n-2) δu, δu(0) = du_max/dε → -1
            let w = (self.n as f64 - 2.0).sqrt();
            return OrbitState {
                t,
                u: self.ubar,
                v: 0.0,
                r: self.ubar.powf(p.geo) * t,
                du: -(w * t).cos(),
                dv: w * (w * t).sin(),
            };
        };
        let sign = if t < 0.0 { -1.0 } else { 1.0 };
        let s = t.abs();
        let m = (s / self.period_t).floor();
        let tau = (s - m * self.period_t).clamp(0.0, self.period_t);
        let mut y = [0.0; DIM];
        traj.interpolate_into(tau, &mut y).expect("tau lies in [0, T]");
        let (u, v, r, du, dv) = (y[0], y[1], y[2], y[3], y[4]);
        // u_ε(t + T(ε)) = u_ε(t) differentiated in ε
        let du = du - m * v * self.period_derivative;
        let dv = dv - m * p.force(u) * self.period_derivative;
        OrbitState { t, u, v: sign * v, r: sign * (m * self.period_r + r), du, dv: sign * dv }
    }

    pub fn u(&self, t: f64) -> f64 {
        self.state(t).u
    }

    pub fn v(&self, t: f64) -> f64 {
        self.state(t).v
    }

    /// `u''(t)` from the ODE.
    pub fn acceleration(&self, t: f64) -> f64 {
        Powers::new(self.n).force(self.u(t))
    }

    pub fn r(&self, t: f64) -> f64 {
        self.state(t).r
    }

    /// The `t` with `r(t) = r`.
    pub fn t_of_r(&self, r: f64) -> Result<f64> {
        let geo = Powers::new(self.n).geo;
        if self.trajectory.is_none() {
            return Ok(r / self.ubar.powf(geo));
        }
        let k = (r / self.period_r).floor();
        let rho = r - k * self.period_r;
        let x_tol = 1e-15 * (1.0 + self.period_t);
        let tau = if rho <= 0.0 {
            0.0
        } else if rho >= self.period_r {
            self.period_t
        } else {
            brent(|t| self.r(t) - rho, 0.0, self.period_t, x_tol, 0.0)?
        };
        Ok(k * self.period_t + tau)
    }

    /// `u` as a function of the geodesic coordinate.
    pub fn u_at_r(&self, r: f64) -> Result<f64> {
        Ok(self.u(self.t_of_r(r)?))
    }

    /// Uniform samples `(t, u, v, r)` over `[0, T]`.
    pub fn samples(&self, count: usize) -> Vec<OrbitState> {
        let count = count.max(2);
        (0..count)
            .map(|i| self.state(self.period_t * i as f64 / (count - 1) as f64))
            .collect()
    }

    /// `max |H(u(t), v(t)) - H(ε, 0)|` over knots and step midpoints.
    pub fn energy_drift(&self) -> f64 {
        let Some(traj) = &self.trajectory else { return 0.0 };
        let mut worst: f64 = 0.0;
        let mut y = [0.0; DIM];
        let times = traj.times();
        for i in 0..times.len() {
            let k = traj.knot_state(i);
            worst = worst.max((super::hamiltonian(self.n, k[0], k[1]) - self.energy).abs());
            if i + 1 < times.len() {
                traj.interpolate_into(0.5 * (times[i] + times[i + 1]), &mut y).expect("inside");
                worst = worst.max((super::hamiltonian(self.n, y[0], y[1]) - self.energy).abs());
            }
        }
        worst
    }

    /// Copy of the orbit re-integrated from `u_max + du`, i.e. off its
    /// energy level but with the recorded period kept. Used to exercise the
    /// consistency checks downstream.
    pub fn with_injected_drift(&self, du: f64) -> Result<Self> {
        if self.trajectory.is_none() {
            return Err(Error::InvalidArgument("cannot perturb the cylinder orbit".into()));
        }
        let p = Powers::new(self.n);
        let field = orbit_field(p);
        let s0 = self.state(0.0);
        let y0 = [self.u_max + du, 0.0, 0.0, s0.du, 0.0];
        let trajectory = integrate_ivp(field, &y0, (0.0, self.period_t), self.tol)?;
        Ok(Self { trajectory: Some(trajectory), ..self.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{closed_form_n4, hamiltonian, period_r_oracle, period_t_oracle};

    fn tol() -> Tolerance {
        PeriodicOrbit::default_tolerance()
    }

    #[test]
    fn n4_periods_match_oracles() {
        let o = solve_orbit(4, 0.5, tol()).unwrap();
        assert!((o.period() - period_t_oracle(4, 0.5).unwrap()).abs() < 1e-9);
        assert!((o.geodesic_period() - PI).abs() < 1e-9);
        assert!(o.energy_drift() < 1e-11, "{}", o.energy_drift());
    }

    #[test]
    fn near_cylinder_period() {
        let ubar = equilibrium_ubar(5).unwrap();
        let o = solve_orbit(5, ubar * (1.0 - 1e-3), tol()).unwrap();
        assert!((o.period() - 2.0 * PI / 3f64.sqrt()).abs() < 1e-2);
    }

    #[test]
    fn turning_points_and_parity() {
        let o = solve_orbit(3, 0.3, tol()).unwrap();
        let s0 = o.state(0.0);
        assert_eq!(s0.u, o.u_max());
        assert_eq!(s0.v, 0.0);
        let half = o.state(0.5 * o.period());
        assert!((half.u - 0.3).abs() < 1e-11);
        for &t in &[0.37, 1.9, 7.4] {
            assert!((o.u(t) - o.u(-t)).abs() < 1e-15);
            assert!((o.v(t) + o.v(-t)).abs() < 1e-15);
            assert!((o.u(t + o.period()) - o.u(t)).abs() < 1e-11);
        }
    }

    #[test]
    fn geodesic_resampling_matches_n4_formula() {
        let o = solve_orbit(4, 0.4, tol()).unwrap();
        for i in 0..60 {
            let r = 2.0 * PI * i as f64 / 60.0;
            let diff = (o.u_at_r(r).unwrap() - closed_form_n4(0.4, r).unwrap()).abs();
            assert!(diff < 1e-9, "r={r} diff={diff}");
        }
    }

    #[test]
    fn variational_derivative_matches_finite_difference() {
        let (n, eps, h) = (5, 0.35, 1e-5);
        let o = solve_orbit(n, eps, tol()).unwrap();
        let up = solve_orbit(n, eps + h, tol()).unwrap();
        let dn = solve_orbit(n, eps - h, tol()).unwrap();
        for &t in &[0.0, 0.8, 2.5, 9.0] {
            let fd = (up.u(t) - dn.u(t)) / (2.0 * h);
            assert!((o.state(t).du - fd).abs() < 1e-6 * (1.0 + fd.abs()), "t={t}");
        }
        let fd_t = (period_t_oracle(n, eps + h).unwrap() - period_t_oracle(n, eps - h).unwrap()) / (2.0 * h);
        assert!((o.period_derivative() - fd_t).abs() < 1e-6 * fd_t.abs());
        let _ = period_r_oracle;
        let _ = hamiltonian;
    }

    #[test]
    fn cylinder_branch() {
        let ubar = equilibrium_ubar(4).unwrap();
        let o = solve_orbit(4, ubar, tol()).unwrap();
        assert!(o.is_cylinder());
        assert!((o.geodesic_period() - PI).abs() < 1e-15);
        assert_eq!(o.u(3.3), ubar);
    }

    #[test]
    fn rejects_bad_eps() {
        assert!(matches!(solve_orbit(4, 2.0, tol()), Err(Error::EpsOutOfRange { .. })));
        assert!(matches!(solve_orbit(4, 1e-8, tol()), Err(Error::EpsBelowFloor { .. })));
        assert!(solve_orbit(4, -0.1, tol()).is_err());
    }
}
