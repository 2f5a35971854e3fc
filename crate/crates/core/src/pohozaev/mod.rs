//! Pohožaev invariants of Delaunay metrics `g = u^{4/(n-2)}(dt² + dθ²)`.
//!
//! Curvature is evaluated in closed form from `(u, u', u'')` with
//! `f = (2/(n-2)) ln u`, so that `g = e^{2f}(dt² + dθ²)`. Sections are the
//! spheres `{t} × S^{n-1}` with unit normal `ν = u^{-2/(n-2)} ∂_t`, which
//! always points toward increasing `t`.
//!
//! Cylinder and sphere are identified by
//! `q(t, θ) = sech t · θ + tanh t · p₁`, for `θ ∈ S^{n-1} ⊂ p₁^⊥`,
//! so the end `t → +∞` sits at `p₁` and `t → -∞` at `-p₁`. In the flat chart
//! `x = e^{-t} θ` this is the stereographic projection from `-p₁`.

mod killing;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::delaunay::{Powers, PeriodicOrbit};
use crate::numerics::{adaptive_quadrature, Tolerance};
use crate::{Error, Result};

pub use killing::{
    centered_dilation_field, chart_to_sphere, complement_basis, conformal_killing_residual, field_in_chart,
    killing_basis, killing_form, verify_conformal_killing, ConformalKillingField,
};

/// Relative deviation of `D/H` across the grid above which calibration fails.
pub const CALIBRATION_TOL: f64 = 1e-5;

/// Frame components of `T = Ric(g) - (R/n) g` on one section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceFreeRicciSection {
    pub t: f64,
    /// `T(e_t, e_t)` for `e_t = u^{-2/(n-2)} ∂_t`
    pub radial: f64,
    /// common value of the angular diagonal entries
    pub angular: f64,
    pub scalar_curvature: f64,
    pub trace: f64,
}

/// Trace-free Ricci from the 2-jet of `u` at one point.
pub fn tracefree_ricci_from_jet(n: usize, t: f64, u: f64, du: f64, ddu: f64) -> TraceFreeRicciSection {
    let p = Powers::new(n);
    let m = p.n - 2.0;
    let f1 = p.geo * du / u;
    let f2 = p.geo * (ddu / u - du * du / (u * u));
    let scale = u.powf(-p.conf);
    // Ricci of e^{2f}(dt² + g_S) with f = f(t); the cylinder contributes
    // (n-2) on each unit sphere direction.
    let ric_tt = -(p.n - 1.0) * f2;
    let ric_aa = m - f2 - m * f1 * f1;
    let scalar = scale * (ric_tt + (p.n - 1.0) * ric_aa);
    let radial = scale * ric_tt - scalar / p.n;
    let angular = scale * ric_aa - scalar / p.n;
    TraceFreeRicciSection {
        t,
        radial,
        angular,
        scalar_curvature: scalar,
        trace: radial + (p.n - 1.0) * angular,
    }
}

/// `u''` comes from the ODE, not from differentiation.
pub fn tracefree_ricci(orbit: &PeriodicOrbit, t: f64) -> TraceFreeRicciSection {
    let s = orbit.state(t);
    tracefree_ricci_from_jet(orbit.n(), t, s.u, s.v, orbit.acceleration(t))
}

/// Volume of the unit sphere `S^m`.
pub fn sphere_volume(m: usize) -> f64 {
    match m {
        0 => 2.0,
        1 => 2.0 * std::f64::consts::PI,
        _ => 2.0 * std::f64::consts::PI / (m as f64 - 1.0) * sphere_volume(m - 2),
    }
}

fn unit_axis(axis: &[f64]) -> Result<DVector<f64>> {
    let p = DVector::from_column_slice(axis);
    if (p.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("axis must be a unit vector, |p| = {}", p.norm())));
    }
    Ok(p)
}

/// `X^t(θ) = w_p - cosh t ⟨θ, a⟩` with `a = (X₀p₁)_⊥ + tanh t · w_⊥`:
/// returns `(w_p, |a| cosh t)`.
fn radial_component(field: &ConformalKillingField, p: &DVector<f64>, t: f64) -> (f64, f64) {
    let w = field.dilation();
    let wp = w.dot(p);
    let b = field.rotation() * p;
    let b_perp = &b - p * b.dot(p);
    let w_perp = w - p * wp;
    let a = b_perp + w_perp * t.tanh();
    (wp, a.norm() * t.cosh())
}

/// `∫_{t} T(X, ν) dσ` over the section at `t`, with `ν` toward increasing `t`.
///
/// `T` is diagonal in `(t, θ)`, so only `X^t` contributes. It is affine in a
/// single linear function of `θ`, and the sphere integral collapses to the
/// polar angle around that direction.
pub fn invariant_about(orbit: &PeriodicOrbit, field: &ConformalKillingField, axis: &[f64], t: f64) -> Result<f64> {
    let n = orbit.n();
    if field.ambient_dim() != n + 1 || axis.len() != n + 1 {
        return Err(Error::LengthMismatch { left: field.ambient_dim().max(axis.len()), right: n + 1 });
    }
    let p = unit_axis(axis)?;
    let pw = Powers::new(n);
    let s = orbit.state(t);
    let tr = tracefree_ricci(orbit, t);
    // T(∂_t, ∂_t) = u^{conf} T_00, ν = u^{-geo} ∂_t, dσ = u^{2(n-1)/(n-2)} dθ
    let density = tr.radial * s.u.powf(pw.conf - pw.geo + 2.0 * (pw.n - 1.0) / (pw.n - 2.0));
    let (wp, slope) = radial_component(field, &p, t);
    let m = n - 2;
    let tol = Tolerance::new(1e-15, 1e-13)?;
    let polar = adaptive_quadrature(
        |phi: f64| (wp - slope * phi.cos()) * phi.sin().powi(m as i32),
        0.0,
        std::f64::consts::PI,
        &tol,
    )?;
    Ok(density * sphere_volume(m) * polar)
}

/// Canonical axis `p₁ = e_0`.
pub fn default_axis(n: usize) -> Vec<f64> {
    let mut p = vec![0.0; n + 1];
    p[0] = 1.0;
    p
}

pub fn invariant(orbit: &PeriodicOrbit, field: &ConformalKillingField, t_section: f64) -> Result<f64> {
    invariant_about(orbit, field, &default_axis(orbit.n()), t_section)
}

/// Invariant against the dilation toward `p₁`, i.e. `∂_t` on the cylinder.
pub fn dilational_invariant(orbit: &PeriodicOrbit) -> Result<f64> {
    let axis = default_axis(orbit.n());
    invariant(orbit, &ConformalKillingField::centered_dilation(&axis), 0.0)
}

/// The invariant of one end as a functional, stored by its values on
/// [`killing_basis`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PohozaevInvariant {
    pub end: usize,
    pub n: usize,
    pub axis: Vec<f64>,
    pub values: Vec<f64>,
    pub dilational: f64,
}

impl PohozaevInvariant {
    /// End `end` of a Delaunay metric whose asymptotic point is `axis`,
    /// evaluated on the section at `t`.
    pub fn compute(orbit: &PeriodicOrbit, end: usize, axis: &[f64], t: f64) -> Result<Self> {
        let basis = killing_basis(orbit.n() + 1);
        let values = basis.iter().map(|x| invariant_about(orbit, x, axis, t)).collect::<Result<Vec<_>>>()?;
        let dilational = invariant_about(orbit, &ConformalKillingField::centered_dilation(axis), axis, t)?;
        Ok(Self { end, n: orbit.n(), axis: axis.to_vec(), values, dilational })
    }

    /// Value on an arbitrary field by linearity.
    pub fn apply(&self, field: &ConformalKillingField) -> Result<f64> {
        let basis = killing_basis(self.n + 1);
        let coords = field_coordinates(field, &basis)?;
        Ok(coords.iter().zip(&self.values).map(|(c, v)| c * v).sum())
    }
}

fn gram(basis: &[ConformalKillingField]) -> DMatrix<f64> {
    let k = basis.len();
    DMatrix::from_fn(k, k, |i, j| killing_form(&basis[i], &basis[j]))
}

fn field_coordinates(field: &ConformalKillingField, basis: &[ConformalKillingField]) -> Result<Vec<f64>> {
    let g = gram(basis);
    let rhs = DVector::from_iterator(basis.len(), basis.iter().map(|b| killing_form(field, b)));
    let x = g.lu().solve(&rhs).ok_or(Error::IllConditioned { what: "Killing Gram matrix", condition: f64::INFINITY })?;
    Ok(x.iter().copied().collect())
}

/// `B(P', P') = pᵀ G⁻¹ p` with `G` the Gram matrix of `B` on the basis.
pub fn invariant_norm(inv: &PohozaevInvariant) -> Result<f64> {
    let basis = killing_basis(inv.n + 1);
    if basis.len() != inv.values.len() {
        return Err(Error::LengthMismatch { left: inv.values.len(), right: basis.len() });
    }
    let g = gram(&basis);
    let sv = g.clone().svd(false, false).singular_values;
    let condition = sv.max() / sv.min();
    if !condition.is_finite() || condition > 1e12 {
        return Err(Error::IllConditioned { what: "Killing Gram matrix", condition });
    }
    let p = DVector::from_column_slice(&inv.values);
    let dual = g.lu().solve(&p).ok_or(Error::IllConditioned { what: "Killing Gram matrix", condition })?;
    Ok(p.dot(&dual))
}

/// A section `{t}` used to cap off one end, with its outward sign relative
/// to `∂_t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndSection {
    pub t: f64,
    pub outward: f64,
}

impl EndSection {
    /// The two ends of a Delaunay cylinder cut at `t = ±a`, `a > 0`.
    pub fn pair(a: f64) -> [Self; 2] {
        [Self { t: a, outward: 1.0 }, Self { t: -a, outward: -1.0 }]
    }
}

/// `|Σ_i 𝒫_i(X)|` over the sections bounding the core of a Delaunay metric.
///
/// Each outward normal must point away from the core: `t > 0` needs
/// `outward = +1` and `t < 0` needs `outward = -1`.
pub fn balancing_check(orbit: &PeriodicOrbit, field: &ConformalKillingField, ends: &[EndSection]) -> Result<f64> {
    let mut sum = 0.0;
    for (i, end) in ends.iter().enumerate() {
        if end.outward.abs() != 1.0 || end.t == 0.0 || end.t.signum() != end.outward {
            return Err(Error::InvalidArgument(format!(
                "end {i}: section t = {} has inconsistent outward sign {}",
                end.t, end.outward
            )));
        }
        sum += end.outward * invariant(orbit, field, end.t)?;
    }
    Ok(sum.abs())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub n: usize,
    pub c_n: f64,
    pub max_relative_deviation: f64,
    pub grid: Vec<f64>,
}

/// `c_n` as the mean of `D(ε)/H(ε)` over `grid`.
pub fn calibrate_cn(n: usize, grid: &[f64]) -> Result<Calibration> {
    use rayon::prelude::*;
    if grid.is_empty() {
        return Err(Error::InvalidArgument("calibration grid is empty".into()));
    }
    let ratios = grid
        .par_iter()
        .map(|&eps| {
            let orbit = crate::delaunay::solve_orbit(n, eps, PeriodicOrbit::default_tolerance())?;
            Ok(dilational_invariant(&orbit)? / orbit.energy())
        })
        .collect::<Result<Vec<f64>>>()?;
    let c_n = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let dev = ratios.iter().map(|r| ((r - c_n) / c_n).abs()).fold(0.0, f64::max);
    if !(dev <= CALIBRATION_TOL) || c_n == 0.0 {
        return Err(Error::CalibrationDeviation { deviation: dev });
    }
    Ok(Calibration { n, c_n, max_relative_deviation: dev, grid: grid.to_vec() })
}
