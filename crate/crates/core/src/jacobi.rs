//! Jacobi fields of the linearized operator `L_ε = Δ_ε + n` built from the
//! two geometric families of Delaunay solutions (translation and change of
//! parameter) and, for the first spherical-harmonic mode, from the
//! conformal motions of the sphere.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::delaunay::{Coordinate, CylinderFunction, PeriodicOrbit, Powers};
use crate::numerics::{central_second_derivative, integrate_ivp, Trajectory};
use crate::{Error, Result};

/// Samples per period used for default windows.
pub const SAMPLES_PER_PERIOD: usize = 64;
/// Steps of the finite-difference residual check, ratio √2. The fields
/// carry dense-output noise near 1e-11, which the stencil amplifies by
/// `h⁻²`, while the truncation error grows like `h⁸`; where the balance
/// sits depends on `n` and `ε`.
const RESIDUAL_STEPS: [f64; 5] = [0.01, 0.014, 0.02, 0.028, 0.04];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobiKind {
    /// `u'/u`: infinitesimal translation
    Phi1,
    /// `∂_ε u_ε / u_ε`: infinitesimal change of parameter
    Phi2,
    /// `e^t (φ₁ + (n-2)/2)`, mode 1
    Phi3,
    /// `e^{-t} ((n-2)/2 - φ₁)`, mode 1
    Phi4,
}

impl JacobiKind {
    pub fn mode(self) -> usize {
        match self {
            JacobiKind::Phi1 | JacobiKind::Phi2 => 0,
            JacobiKind::Phi3 | JacobiKind::Phi4 => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthClass {
    Periodic,
    Linear,
    ExpPlus,
    ExpMinus,
}

/// A solution of `L_j φ = 0` attached to an orbit, evaluated exactly from
/// the orbit's dense output, plus samples over a window.
#[derive(Debug, Clone)]
pub struct JacobiField<'a> {
    orbit: &'a PeriodicOrbit,
    kind: JacobiKind,
    growth: GrowthClass,
    samples: CylinderFunction,
}

impl<'a> JacobiField<'a> {
    fn build(orbit: &'a PeriodicOrbit, kind: JacobiKind) -> Self {
        let growth = match kind {
            JacobiKind::Phi1 => GrowthClass::Periodic,
            JacobiKind::Phi2 if orbit.period_derivative().abs() > 1e-6 => GrowthClass::Linear,
            JacobiKind::Phi2 => GrowthClass::Periodic,
            JacobiKind::Phi3 => GrowthClass::ExpPlus,
            JacobiKind::Phi4 => GrowthClass::ExpMinus,
        };
        let mut me = Self {
            orbit,
            kind,
            growth,
            samples: CylinderFunction::new(Coordinate::Cylinder, vec![], vec![], None).expect("empty"),
        };
        me.samples = me
            .sample((0.0, 2.0 * orbit.period()), 2 * SAMPLES_PER_PERIOD + 1)
            .expect("valid default window");
        me
    }

    pub fn orbit(&self) -> &'a PeriodicOrbit {
        self.orbit
    }

    pub fn kind(&self) -> JacobiKind {
        self.kind
    }

    pub fn mode(&self) -> usize {
        self.kind.mode()
    }

    pub fn growth_class(&self) -> GrowthClass {
        self.growth
    }

    /// Samples over two periods starting at `t = 0`.
    pub fn samples(&self) -> &CylinderFunction {
        &self.samples
    }

    /// `(φ(t), φ'(t))`.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        let s = self.orbit.state(t);
        let f = Powers::new(self.orbit.n()).force(s.u);
        let u2 = s.u * s.u;
        let phi1 = s.v / s.u;
        let dphi1 = (f * s.u - s.v * s.v) / u2;
        let c = 0.5 * (self.orbit.n() as f64 - 2.0);
        match self.kind {
            JacobiKind::Phi1 => (phi1, dphi1),
            JacobiKind::Phi2 => (s.du / s.u, (s.dv * s.u - s.du * s.v) / u2),
            JacobiKind::Phi3 => {
                let e = t.exp();
                (e * (phi1 + c), e * (phi1 + c + dphi1))
            }
            JacobiKind::Phi4 => {
                let e = (-t).exp();
                (e * (c - phi1), -e * (c - phi1 + dphi1))
            }
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        self.eval(t).0
    }

    pub fn sample(&self, window: (f64, f64), count: usize) -> Result<CylinderFunction> {
        CylinderFunction::sample(Coordinate::Cylinder, window, count, Some(self.mode()), |t| self.value(t))
    }

    /// Sup over the window of the normalized mode residual, see
    /// [`mode_residual`].
    pub fn residual(&self, window: (f64, f64), count: usize) -> f64 {
        mode_residual(self.orbit, self.mode(), |t| self.value(t), window, count)
    }
}

pub fn phi1(orbit: &PeriodicOrbit) -> JacobiField<'_> {
    JacobiField::build(orbit, JacobiKind::Phi1)
}

/// `φ₂ = ∂_ε u_ε / u_ε` for the max-phased family, from the variational
/// equations integrated with the orbit.
///
/// With `u_ε(0) = u_max(ε)` this gives `φ₂(0) = u_max'(ε)/u_max` and
/// `φ₂(T/2) = 1/ε`.
pub fn phi2(orbit: &PeriodicOrbit) -> JacobiField<'_> {
    JacobiField::build(orbit, JacobiKind::Phi2)
}

pub fn phi3(orbit: &PeriodicOrbit) -> JacobiField<'_> {
    JacobiField::build(orbit, JacobiKind::Phi3)
}

pub fn phi4(orbit: &PeriodicOrbit) -> JacobiField<'_> {
    JacobiField::build(orbit, JacobiKind::Phi4)
}

pub fn jacobi_field(orbit: &PeriodicOrbit, kind: JacobiKind) -> JacobiField<'_> {
    JacobiField::build(orbit, kind)
}

/// `λ_j = -j(j + n - 2)`, eigenvalue of the cross-sectional Laplacian.
pub fn sphere_eigenvalue(n: usize, j: usize) -> f64 {
    let (n, j) = (n as f64, j as f64);
    -j * (j + n - 2.0)
}

/// Pointwise value of `u^{4/(n-2)} L_j φ` at `t`, with `φ''` taken by
/// eighth-order central differences of `phi` and `φ'` likewise.
///
/// Multiplying by `u^{4/(n-2)}` puts the operator in cylinder units
/// (`φ'' + 2(u'/u)φ' + (λ_j + n u^{4/(n-2)})φ`).
pub fn scaled_mode_operator<F: Fn(f64) -> f64>(orbit: &PeriodicOrbit, mode: usize, phi: &F, t: f64, h: f64) -> f64 {
    let p = Powers::new(orbit.n());
    let s = orbit.state(t);
    let d1 = crate::numerics::central_first_derivative(phi, t, h);
    let d2 = central_second_derivative(phi, t, h);
    let lambda = sphere_eigenvalue(orbit.n(), mode);
    d2 + 2.0 * (s.v / s.u) * d1 + (lambda + p.n * s.u.powf(p.conf)) * phi(t)
}

/// `sup_t |u^{4/(n-2)} L_j φ(t)| / max(1, |φ(t)|)` over `count` points of
/// the window. The relative normalization keeps exponentially growing
/// fields comparable with bounded ones.
pub fn mode_residual<F: Fn(f64) -> f64>(
    orbit: &PeriodicOrbit,
    mode: usize,
    phi: F,
    window: (f64, f64),
    count: usize,
) -> f64 {
    let (a, b) = window;
    let count = count.max(2);
    (0..count)
        .map(|i| {
            let t = a + (b - a) * i as f64 / (count - 1) as f64;
            // the two neighbouring steps that agree best; report the larger
            let r = RESIDUAL_STEPS.map(|h| scaled_mode_operator(orbit, mode, &phi, t, h));
            let best = r
                .windows(2)
                .min_by(|x, y| (x[0] - x[1]).abs().total_cmp(&(y[0] - y[1]).abs()))
                .map(|w| w[0].abs().max(w[1].abs()))
                .expect("several steps");
            best / phi(t).abs().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Independent long-time integration of the mode-0 variational system
/// `(u, v, δu, δv)` from the max-phase initial data over `[0, t_end]`,
/// without using periodicity. Returns a trajectory whose `φ₂` is
/// `δu/u`.
pub fn integrate_phi2(orbit: &PeriodicOrbit, t_end: f64) -> Result<Trajectory> {
    let s = orbit.state(0.0);
    let p = Powers::new(orbit.n());
    let field = move |_t: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = y[1];
        dy[1] = p.force(y[0]);
        dy[2] = y[3];
        dy[3] = p.force_derivative(y[0]) * y[2];
    };
    Ok(integrate_ivp(field, &[s.u, s.v, s.du, s.dv], (0.0, t_end), orbit.tolerance())?)
}

/// Samples of the weighted Wronskian `u²(f'g - fg')` and how far it is from
/// constant.
#[derive(Debug, Clone)]
pub struct WronskianPairing {
    pub samples: CylinderFunction,
    /// mean over the samples
    pub value: f64,
    /// `max |W - mean| / |mean|` (absolute deviation when the mean is 0)
    pub relative_variation: f64,
}

pub fn wronskian_pairing(f: &JacobiField<'_>, g: &JacobiField<'_>, window: (f64, f64), count: usize) -> Result<WronskianPairing> {
    if f.mode() != g.mode() {
        return Err(Error::ModeMismatch { left: f.mode(), right: g.mode() });
    }
    if !std::ptr::eq(f.orbit(), g.orbit()) {
        return Err(Error::InvalidArgument("Wronskian of fields on different orbits".into()));
    }
    let orbit = f.orbit();
    let samples = CylinderFunction::sample(Coordinate::Cylinder, window, count, Some(f.mode()), |t| {
        let (fv, fd) = f.eval(t);
        let (gv, gd) = g.eval(t);
        let u = orbit.u(t);
        u * u * (fd * gv - fv * gd)
    })?;
    let value = samples.values().iter().sum::<f64>() / samples.len() as f64;
    let dev = samples.values().iter().fold(0.0f64, |m, w| m.max((w - value).abs()));
    let relative_variation = if value != 0.0 { dev / value.abs() } else { dev };
    Ok(WronskianPairing { samples, value, relative_variation })
}

/// Per-end coefficients `(a_j, b_j)` of `φ₁, φ₂` in the asymptotic
/// expansion of a mode-0 solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeficiencyCoefficients {
    pub pairs: Vec<(f64, f64)>,
}

impl DeficiencyCoefficients {
    pub fn new(pairs: Vec<(f64, f64)>) -> Self {
        Self { pairs }
    }

    /// From the flat layout `(a_1, b_1, …, a_k, b_k)`.
    pub fn from_flat(flat: &[f64]) -> Result<Self> {
        if flat.len() % 2 != 0 {
            return Err(Error::InvalidArgument("odd number of deficiency coefficients".into()));
        }
        Ok(Self { pairs: flat.chunks(2).map(|c| (c[0], c[1])).collect() })
    }

    pub fn ends(&self) -> usize {
        self.pairs.len()
    }
}

/// Result of projecting end data onto `{φ₁, φ₂}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientFit {
    pub a: f64,
    pub b: f64,
    /// RMS of `w - aφ₁ - bφ₂` over the window
    pub residual_norm: f64,
}

/// Least-squares fit of `w ≈ a φ₁ + b φ₂` on the window of `w`.
pub fn extract_deficiency_coefficients(w: &CylinderFunction, orbit: &PeriodicOrbit) -> Result<CoefficientFit> {
    if w.coordinate() != Coordinate::Cylinder {
        return Err(Error::InvalidArgument("expected cylinder samples".into()));
    }
    if let Some(j) = w.mode() {
        if j != 0 {
            return Err(Error::ModeMismatch { left: j, right: 0 });
        }
    }
    let (t0, t1) = w.window();
    if t1 - t0 < 2.0 * orbit.period() * (1.0 - 1e-12) {
        return Err(Error::IllConditioned { what: "fit window shorter than two periods", condition: f64::INFINITY });
    }
    let f1 = phi1(orbit);
    let f2 = phi2(orbit);
    let m = w.len();
    let design = DMatrix::from_fn(m, 2, |i, c| {
        let t = w.points()[i];
        if c == 0 {
            f1.value(t)
        } else {
            f2.value(t)
        }
    });
    let rhs = DVector::from_column_slice(w.values());
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > 1e10 {
        return Err(Error::IllConditioned { what: "φ₁/φ₂ design matrix", condition });
    }
    let coef = svd.solve(&rhs, 0.0).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let resid = &rhs - &design * &coef;
    Ok(CoefficientFit { a: coef[0], b: coef[1], residual_norm: resid.norm() / (m as f64).sqrt() })
}

/// `Σ_j (α_j b_j - a_j β_j)` for `c1 = (a, b)` and `c2 = (α, β)`.
///
/// This is the one place the sign convention of the pairing is fixed.
pub fn symplectic_form(c1: &DeficiencyCoefficients, c2: &DeficiencyCoefficients) -> Result<f64> {
    if c1.ends() != c2.ends() {
        return Err(Error::LengthMismatch { left: c1.ends(), right: c2.ends() });
    }
    Ok(c1.pairs.iter().zip(&c2.pairs).map(|(&(a, b), &(al, be))| al * b - a * be).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{equilibrium_ubar, solve_orbit};

    fn orbit(n: usize, eps: f64) -> PeriodicOrbit {
        solve_orbit(n, eps, PeriodicOrbit::default_tolerance()).unwrap()
    }

    #[test]
    fn phase_values() {
        let o = orbit(4, 0.5);
        assert_eq!(phi1(&o).value(0.0), 0.0);
        let p2 = phi2(&o);
        assert!((p2.value(0.5 * o.period()) - 2.0).abs() < 1e-9);
        assert!((p2.value(0.0) - o.state(0.0).du / o.u_max()).abs() < 1e-15);
    }

    #[test]
    fn residuals_small() {
        let o = orbit(5, 0.3);
        let w = (0.0, 2.0 * o.period());
        for kind in [JacobiKind::Phi1, JacobiKind::Phi2, JacobiKind::Phi3, JacobiKind::Phi4] {
            let r = jacobi_field(&o, kind).residual(w, 200);
            assert!(r < 1e-7, "{kind:?}: {r}");
        }
    }

    #[test]
    fn wrong_mode_has_large_residual() {
        let o = orbit(4, 0.5);
        let f = phi3(&o);
        let r = mode_residual(&o, 0, |t| f.value(t), (0.0, o.period()), 50);
        assert!(r > 1e-2);
    }

    #[test]
    fn cylinder_fields() {
        let ubar = equilibrium_ubar(4).unwrap();
        let o = orbit(4, ubar);
        assert_eq!(phi1(&o).value(1.3), 0.0);
        assert!((phi3(&o).value(1.3) - 1.3f64.exp()).abs() < 1e-14);
        let p2 = phi2(&o);
        assert!((p2.value(0.7) + (2f64.sqrt() * 0.7).cos() / ubar).abs() < 1e-14);
    }

    #[test]
    fn wronskian_antisymmetric_and_constant() {
        let o = orbit(4, 0.4);
        let a = phi1(&o);
        let b = phi2(&o);
        let w = (0.0, 2.0 * o.period());
        assert_eq!(wronskian_pairing(&a, &a, w, 50).unwrap().value, 0.0);
        let p = wronskian_pairing(&a, &b, w, 200).unwrap();
        assert!(p.relative_variation < 1e-8 && p.value.abs() > 1e-3);
        assert!(wronskian_pairing(&a, &phi3(&o), w, 10).is_err());
    }

    #[test]
    fn coefficient_recovery() {
        let o = orbit(4, 0.4);
        let t = o.period();
        let (f1, f2) = (phi1(&o), phi2(&o));
        let w = CylinderFunction::sample(Coordinate::Cylinder, (5.0 * t, 9.0 * t), 257, Some(0), |s| {
            2.0 * f1.value(s) - 3.0 * f2.value(s)
        })
        .unwrap();
        let fit = extract_deficiency_coefficients(&w, &o).unwrap();
        assert!((fit.a - 2.0).abs() < 1e-8 && (fit.b + 3.0).abs() < 1e-8);
        let short = CylinderFunction::sample(Coordinate::Cylinder, (0.0, t), 65, Some(0), |s| f1.value(s)).unwrap();
        assert!(extract_deficiency_coefficients(&short, &o).is_err());
    }

    #[test]
    fn symplectic_examples() {
        let c1 = DeficiencyCoefficients::from_flat(&[1.0, 0.0, 1.0, 0.0]).unwrap();
        let c2 = DeficiencyCoefficients::from_flat(&[0.0, 1.0, 0.0, 1.0]).unwrap();
        assert_eq!(symplectic_form(&c1, &c2).unwrap(), -2.0);
        assert_eq!(symplectic_form(&c2, &c1).unwrap(), 2.0);
        assert_eq!(symplectic_form(&c1, &c1).unwrap(), 0.0);
        let c3 = DeficiencyCoefficients::from_flat(&[1.0, 0.0]).unwrap();
        assert!(symplectic_form(&c1, &c3).is_err());
    }
}
