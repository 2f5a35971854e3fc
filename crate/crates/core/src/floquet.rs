//! Band structure of the cross-sectional mode operators `L_j`.
//!
//! `L_j ψ = σ ψ` is multiplied through by `W = u^{2n/(n-2)}` to give the
//! self-adjoint periodic problem `(P ψ')' + Q_j ψ = σ W ψ` with
//! `P = u²`, `Q_j = λ_j u² + n W`. Its period map on `(ψ, Pψ')` has unit
//! determinant, so the trace (the discriminant `Δ`) decides band
//! membership: `σ` is in the spectrum iff `|Δ(σ)| ≤ 2`.
//!
//! Bands are reported for `-L`, whose spectral parameter is `s = -σ`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::delaunay::{PeriodicOrbit, Powers};
use crate::jacobi::sphere_eigenvalue;
use crate::numerics::{brent, eigen_2x2, integrate_ivp, Tolerance};
use crate::{Error, Result};

/// `|Δ ∓ 2|` below which the period map is treated as parabolic.
pub const PARABOLIC_TOL: f64 = 1e-7;
/// Off-diagonal size above which a parabolic period map is a Jordan block.
pub const JORDAN_TOL: f64 = 1e-7;
/// Gaps whose discriminant never exceeds 2 by more than this are treated as
/// closed (tangential touching of ±2).
pub const CLOSED_GAP_EXCESS: f64 = 1e-8;
/// Default number of scan points per window.
pub const DEFAULT_RESOLUTION: usize = 2000;

/// Spherical harmonics of degree `j` on `S^{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereMode {
    pub j: usize,
    /// eigenvalue of the cross-sectional Laplacian, `-j(j+n-2)`
    pub lambda: f64,
    pub multiplicity: u64,
}

fn binomial(m: i64, k: i64) -> u64 {
    if k < 0 || m < k {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1u64, |acc, i| acc * (m - i) as u64 / (i + 1) as u64)
}

impl SphereMode {
    pub fn new(n: usize, j: usize) -> Self {
        let (ni, ji) = (n as i64, j as i64);
        let multiplicity = binomial(ji + ni - 1, ni - 1) - binomial(ji + ni - 3, ni - 1);
        Self { j, lambda: sphere_eigenvalue(n, j), multiplicity }
    }
}

/// Modes `0..=j_max` of `S^{n-1}`.
pub fn sphere_modes(n: usize, j_max: usize) -> Result<Vec<SphereMode>> {
    crate::delaunay::check_dimension(n)?;
    Ok((0..=j_max).map(|j| SphereMode::new(n, j)).collect())
}

/// The self-adjoint form of `L_j` along an orbit.
#[derive(Debug, Clone, Copy)]
pub struct SturmLiouvilleForm<'a> {
    orbit: &'a PeriodicOrbit,
    mode: SphereMode,
}

pub fn sl_form(orbit: &PeriodicOrbit, j: usize) -> SturmLiouvilleForm<'_> {
    SturmLiouvilleForm { orbit, mode: SphereMode::new(orbit.n(), j) }
}

impl<'a> SturmLiouvilleForm<'a> {
    pub fn orbit(&self) -> &'a PeriodicOrbit {
        self.orbit
    }

    pub fn mode(&self) -> SphereMode {
        self.mode
    }

    /// `(P, Q, W)` at `t`.
    pub fn coefficients(&self, t: f64) -> (f64, f64, f64) {
        coefficients_at(self.orbit.n(), self.mode.lambda, self.orbit.u(t))
    }

    /// Period map at `σ` (for `L_j ψ = σ ψ`).
    pub fn monodromy(&self, sigma: f64) -> Result<MonodromyResult> {
        monodromy(self, sigma)
    }

    /// `Δ(σ)` only.
    pub fn discriminant(&self, sigma: f64) -> Result<f64> {
        Ok(self.monodromy(sigma)?.discriminant)
    }
}

fn coefficients_at(n: usize, lambda: f64, u: f64) -> (f64, f64, f64) {
    let p = Powers::new(n);
    let w = u.powf(p.q);
    let pp = u * u;
    (pp, lambda * pp + p.n * w, w)
}

/// Period map of `(ψ, Pψ')` over one period and its spectral data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonodromyResult {
    /// parameter of `L_j ψ = σ ψ`
    pub sigma: f64,
    pub matrix: [[f64; 2]; 2],
    /// roots of `μ² - Δμ + 1`
    #[serde(skip)]
    pub multipliers: [Complex64; 2],
    pub discriminant: f64,
    pub determinant: f64,
    /// `|Δ| = 2` up to `PARABOLIC_TOL`
    pub parabolic: bool,
    /// parabolic with a nontrivial Jordan block
    pub defective: bool,
}

impl MonodromyResult {
    /// `|det M - 1|` relative to the size of the products it is made of;
    /// large multipliers make the absolute value meaningless.
    pub fn determinant_error(&self) -> f64 {
        let [[a, b], [c, d]] = self.matrix;
        (self.determinant - 1.0).abs() / (a * d).abs().max((b * c).abs()).max(1.0)
    }

    /// Floquet exponents `log|μ|/T`, larger first.
    pub fn exponents(&self, period: f64) -> [f64; 2] {
        let g = self.multipliers[0].norm().ln() / period;
        [g.abs(), -g.abs()]
    }
}

/// Multipliers from the discriminant, assuming unit determinant; the
/// smaller one is `1/μ₊` so that both keep full relative accuracy.
fn multipliers_from_trace(delta: f64) -> [Complex64; 2] {
    let half = 0.5 * delta;
    if half.abs() <= 1.0 {
        let im = (1.0 - half * half).max(0.0).sqrt();
        [Complex64::new(half, im), Complex64::new(half, -im)]
    } else {
        let big = half + (half * half - 1.0).sqrt().copysign(half);
        [Complex64::new(big, 0.0), Complex64::new(1.0 / big, 0.0)]
    }
}

pub fn monodromy(sl: &SturmLiouvilleForm<'_>, sigma: f64) -> Result<MonodromyResult> {
    let orbit = sl.orbit;
    let n = orbit.n();
    let lambda = sl.mode.lambda;
    let field = |t: f64, y: &[f64], dy: &mut [f64]| {
        let (p, q, w) = coefficients_at(n, lambda, orbit.u(t));
        let k = sigma * w - q;
        dy[0] = y[1] / p;
        dy[1] = k * y[0];
        dy[2] = y[3] / p;
        dy[3] = k * y[2];
    };
    let tol = orbit.tolerance();
    let tol = Tolerance::new(tol.abs().max(1e-13), tol.rel().max(1e-13))?;
    let traj = integrate_ivp(field, &[1.0, 0.0, 0.0, 1.0], (0.0, orbit.period()), tol)?;
    let y = traj.knot_state(traj.len() - 1);
    let matrix = [[y[0], y[2]], [y[1], y[3]]];
    let discriminant = y[0] + y[3];
    let determinant = y[0] * y[3] - y[2] * y[1];
    let parabolic = (discriminant.abs() - 2.0).abs() < PARABOLIC_TOL;
    let eig = eigen_2x2(matrix, PARABOLIC_TOL);
    let off = matrix[0][1].abs().max(matrix[1][0].abs()).max((matrix[0][0] - matrix[1][1]).abs());
    let defective = parabolic && (eig.defective || off > JORDAN_TOL);
    Ok(MonodromyResult {
        sigma,
        matrix,
        multipliers: multipliers_from_trace(discriminant),
        discriminant,
        determinant,
        parabolic,
        defective,
    })
}

/// Bands and gaps of `-L_j` over a window of its spectral parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandStructure {
    pub mode: SphereMode,
    pub window: (f64, f64),
    pub resolution: usize,
    /// closed intervals with `|Δ| ≤ 2`, clipped to the window
    pub bands: Vec<(f64, f64)>,
    /// open intervals between consecutive bands inside the window
    pub gaps: Vec<(f64, f64)>,
    /// scan samples `(s, Δ(-s))`
    pub scan: Vec<(f64, f64)>,
}

impl BandStructure {
    /// Lowest band edge inside the window, if any band starts there.
    pub fn lowest_edge(&self) -> Option<f64> {
        self.bands.first().map(|b| b.0)
    }

    pub fn gap_containing(&self, s: f64) -> Option<(f64, f64)> {
        self.gaps.iter().copied().find(|g| g.0 < s && s < g.1)
    }
}

/// Scan `Δ` on `resolution` points of `window` (in the `-L` parameter `s`)
/// and refine every crossing of `|Δ| = 2` by Brent's method.
pub fn band_structure(sl: &SturmLiouvilleForm<'_>, window: (f64, f64), resolution: usize) -> Result<BandStructure> {
    let (s0, s1) = window;
    if !(s1 > s0) || !s0.is_finite() || !s1.is_finite() || resolution < 3 {
        return Err(Error::InvalidArgument(format!("bad band window [{s0}, {s1}] / resolution {resolution}")));
    }
    let grid: Vec<f64> = (0..resolution).map(|i| s0 + (s1 - s0) * i as f64 / (resolution - 1) as f64).collect();
    let scan: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&s| sl.discriminant(-s).map(|d| (s, d)))
        .collect::<Result<_>>()?;
    for w in scan.windows(2) {
        // a whole band crossed inside one cell cannot be resolved
        if w[0].1.min(w[1].1) < -2.0 && w[0].1.max(w[1].1) > 2.0 {
            return Err(Error::InvalidArgument(format!(
                "band scan resolution too coarse near s = {}: Δ jumps from {} to {}",
                w[0].0, w[0].1, w[1].1
            )));
        }
    }

    let excess = |d: f64| d.abs() - 2.0;
    let mut edges: Vec<f64> = Vec::new();
    let mut inside = excess(scan[0].1) <= 0.0;
    let mut start = if inside { Some(s0) } else { None };
    let mut bands = Vec::new();
    let mut peak_outside = if inside { 0.0 } else { excess(scan[0].1) };
    let mut pending_gap_start: Option<f64> = None;
    for w in scan.windows(2) {
        let (a, da) = w[0];
        let (b, db) = w[1];
        let now_inside = excess(db) <= 0.0;
        if !now_inside {
            peak_outside = f64::max(peak_outside, excess(db));
        }
        if now_inside == inside {
            continue;
        }
        let edge = if (da - db).abs() > 0.0 {
            let target = if da.abs() > 2.0 { 2.0f64.copysign(da) } else { 2.0f64.copysign(db) };
            brent(|s| sl.discriminant(-s).map(|d| d - target).unwrap_or(f64::NAN), a, b, 1e-12, 0.0).unwrap_or(0.5 * (a + b))
        } else {
            0.5 * (a + b)
        };
        edges.push(edge);
        if now_inside {
            // entering a band: close the gap unless it never really opened
            match (pending_gap_start, bands.last_mut()) {
                (Some(_), Some(last)) if peak_outside < CLOSED_GAP_EXCESS => {
                    let (lo, _): (f64, f64) = *last;
                    bands.pop();
                    start = Some(lo);
                }
                _ => start = Some(edge),
            }
            pending_gap_start = None;
        } else {
            bands.push((start.take().expect("band open"), edge));
            pending_gap_start = Some(edge);
            peak_outside = excess(db);
        }
        inside = now_inside;
    }
    if let Some(lo) = start {
        bands.push((lo, s1));
    }
    let gaps = bands.windows(2).map(|w| (w[0].1, w[1].0)).collect();
    Ok(BandStructure { mode: sl.mode, window, resolution, bands, gaps, scan })
}

/// Whether `0` lies in a gap of `L_j`, with margin `|Δ(0)| - 2`.
pub fn check_zero_not_in_spec(orbit: &PeriodicOrbit, j: usize) -> Result<(bool, f64)> {
    let d = sl_form(orbit, j).discriminant(0.0)?;
    let margin = d.abs() - 2.0;
    Ok((margin > 0.0, margin))
}

/// Sup over one period of the relative error in the identity
/// `u^{-p} L₁ u^p = (4n/(n-2)²) u^{-2n/(n-2)} H(ε)` with `p = 2/(n-2)`.
///
/// The left side is evaluated from its definition, with `u''` from the ODE.
pub fn conjugation_identity(orbit: &PeriodicOrbit, count: usize) -> f64 {
    let n = orbit.n();
    let pw = Powers::new(n);
    let p = pw.geo;
    let nf = pw.n;
    let lambda1 = sphere_eigenvalue(n, 1);
    let coeff = 4.0 * nf / ((nf - 2.0) * (nf - 2.0));
    let count = count.max(2);
    (0..count)
        .map(|i| {
            let t = orbit.period() * i as f64 / (count - 1) as f64;
            let s = orbit.state(t);
            let (u, v) = (s.u, s.v);
            let f = pw.force(u);
            let g = u.powf(p);
            let g1 = p * u.powf(p - 1.0) * v;
            let g2 = p * (p - 1.0) * u.powf(p - 2.0) * v * v + p * u.powf(p - 1.0) * f;
            let l1 = u.powf(-pw.conf) * (g2 + lambda1 * g) + 2.0 * v * u.powf(-pw.crit) * g1 + nf * g;
            let a = l1 / g;
            let target = coeff * u.powf(-pw.q) * orbit.energy();
            ((a - target) / target).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{equilibrium_ubar, solve_orbit};

    fn orbit(n: usize, eps: f64) -> PeriodicOrbit {
        solve_orbit(n, eps, PeriodicOrbit::default_tolerance()).unwrap()
    }

    #[test]
    fn sphere_mode_table() {
        let m = sphere_modes(4, 3).unwrap();
        assert_eq!((m[0].lambda, m[0].multiplicity), (0.0, 1));
        assert_eq!((m[1].lambda, m[1].multiplicity), (-3.0, 4));
        assert_eq!((m[2].lambda, m[2].multiplicity), (-8.0, 9));
        assert_eq!(m[3].multiplicity, 16);
        assert_eq!(SphereMode::new(3, 2).multiplicity, 5);
        assert_eq!(SphereMode::new(6, 2).multiplicity, 20);
    }

    #[test]
    fn cylinder_trace_matches_closed_form() {
        // at ū, L_j ψ = σψ is ψ'' = ((n-2)/n)(σ - n) ψ - λ_j ψ
        let n = 5;
        let ubar = equilibrium_ubar(n).unwrap();
        let o = orbit(n, ubar);
        let nf = n as f64;
        for &(j, sigma) in &[(0usize, 0.0), (0, -2.0), (1, 0.0), (2, 1.5)] {
            let lambda = sphere_eigenvalue(n, j);
            let k = (nf - 2.0) / nf * (sigma - nf) - lambda;
            let t = o.period();
            let exact = if k < 0.0 { 2.0 * ((-k).sqrt() * t).cos() } else { 2.0 * (k.sqrt() * t).cosh() };
            let m = sl_form(&o, j).monodromy(sigma).unwrap();
            assert!((m.discriminant - exact).abs() < 1e-9 * exact.abs().max(1.0), "j={j} σ={sigma}");
        }
    }

    #[test]
    fn unit_determinant_and_unipotent_mode_zero() {
        let o = orbit(4, 0.5);
        for &(j, sigma) in &[(0usize, 0.0), (0, 1.3), (1, -0.7), (2, 0.0)] {
            let m = sl_form(&o, j).monodromy(sigma).unwrap();
            assert!(m.determinant_error() < 1e-9, "j={j}: det {}", m.determinant);
        }
        let m0 = sl_form(&o, 0).monodromy(0.0).unwrap();
        assert!((m0.discriminant - 2.0).abs() < 1e-7);
        assert!(m0.parabolic && m0.defective);
    }

    #[test]
    fn mode_one_multipliers_are_exp_period() {
        let o = orbit(4, 0.5);
        let m = sl_form(&o, 1).monodromy(0.0).unwrap();
        let g = m.exponents(o.period());
        assert!((g[0] - 1.0).abs() < 1e-8 && (g[1] + 1.0).abs() < 1e-8);
    }

    #[test]
    fn zero_in_gap_for_higher_modes() {
        let o = orbit(4, 0.5);
        let (in_gap0, _) = check_zero_not_in_spec(&o, 0).unwrap();
        assert!(!in_gap0);
        let (g1, m1) = check_zero_not_in_spec(&o, 1).unwrap();
        let (g2, m2) = check_zero_not_in_spec(&o, 2).unwrap();
        assert!(g1 && g2 && m2 > m1);
    }

    #[test]
    fn cylinder_bands() {
        let n = 4;
        let o = orbit(n, equilibrium_ubar(n).unwrap());
        let b0 = band_structure(&sl_form(&o, 0), (-5.0, 5.0), 400).unwrap();
        assert!((b0.lowest_edge().unwrap() + 4.0).abs() < 1e-6, "{:?}", b0.bands);
        assert!(b0.gaps.is_empty(), "{:?}", b0.gaps);
        let b1 = band_structure(&sl_form(&o, 1), (-5.0, 5.0), 400).unwrap();
        assert!((b1.lowest_edge().unwrap() - 2.0).abs() < 1e-6, "{:?}", b1.bands);
    }

    #[test]
    fn conjugation_identity_holds() {
        for &(n, eps) in &[(4, 0.5), (3, 0.3), (6, 0.1)] {
            let e = conjugation_identity(&orbit(n, eps), 200);
            assert!(e < 1e-9, "n={n} eps={eps}: {e}");
        }
    }

    #[test]
    fn sl_form_equals_direct_operator() {
        // ψ = sin(2πt/T): W⁻¹[(Pψ')' + Qψ] against L₁ψ written out directly
        let o = orbit(4, 0.5);
        let sl = sl_form(&o, 1);
        let pw = Powers::new(4);
        let k = 2.0 * std::f64::consts::PI / o.period();
        for i in 0..50 {
            let t = o.period() * i as f64 / 50.0;
            let s = o.state(t);
            let (psi, d1, d2) = ((k * t).sin(), k * (k * t).cos(), -k * k * (k * t).sin());
            let (p, q, w) = sl.coefficients(t);
            let dp = 2.0 * s.u * s.v;
            let sl_side = (dp * d1 + p * d2 + q * psi) / w;
            let direct = s.u.powf(-pw.conf) * (d2 - 3.0 * psi) + 2.0 * s.v * s.u.powf(-pw.crit) * d1 + 4.0 * psi;
            assert!((sl_side - direct).abs() < 1e-9);
        }
    }
}
