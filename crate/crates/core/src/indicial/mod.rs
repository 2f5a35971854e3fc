//! Indicial data of the linearized operator at a Delaunay end: Floquet
//! exponents per mode (the growth-rate set Γ), the sharp decay rate γ₁, the
//! order of the pole at 0, the relative index, a discrete Fourier–Laplace
//! transform and least-squares asymptote fitting.

mod fit;
mod transform;

pub use fit::{fit_asymptote, AsymptoteFit, FitOptions};
pub use transform::{fourier_laplace, inverse_fourier_laplace};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::delaunay::{equilibrium_ubar, solve_orbit, PeriodicOrbit};
use crate::floquet::{sl_form, SphereMode, PARABOLIC_TOL};
use crate::{Error, Result};

/// Exponents below this are treated as zero.
pub const ZERO_EXPONENT: f64 = 1e-8;

/// One growth rate `γ = log|μ|/T` of the σ = 0 period map of mode `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloquetExponent {
    pub j: usize,
    pub gamma: f64,
    /// algebraic multiplicity as a Floquet multiplier (1 or 2)
    pub multiplicity: usize,
    /// dimension of the degree-`j` spherical harmonics
    pub sphere_multiplicity: u64,
    pub defective: bool,
}

/// Floquet exponents of `L_j` at `σ = 0`, paired `±γ`.
pub fn floquet_exponents(orbit: &PeriodicOrbit, j: usize) -> Result<Vec<FloquetExponent>> {
    let m = sl_form(orbit, j).monodromy(0.0)?;
    let sphere_multiplicity = SphereMode::new(orbit.n(), j).multiplicity;
    let [g, _] = m.exponents(orbit.period());
    let entry = |gamma: f64, multiplicity: usize| FloquetExponent {
        j,
        gamma,
        multiplicity,
        sphere_multiplicity,
        defective: m.defective,
    };
    if m.parabolic || m.discriminant.abs() < 2.0 || g < ZERO_EXPONENT {
        Ok(vec![entry(0.0, 2)])
    } else {
        Ok(vec![entry(g, 1), entry(-g, 1)])
    }
}

/// The merged exponent set over modes `0..=j_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicialSet {
    pub n: usize,
    pub eps: f64,
    pub j_max: usize,
    /// sorted by `|γ|`, then `γ`, then `j`
    pub entries: Vec<FloquetExponent>,
    /// smallest strictly positive exponent
    pub gamma1: Option<f64>,
}

impl IndicialSet {
    /// Every exponent has its negative with equal multiplicity.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| {
            self.entries
                .iter()
                .any(|f| f.j == e.j && (f.gamma + e.gamma).abs() <= tol && f.multiplicity == e.multiplicity)
        })
    }

    /// Positive exponents in order of mode.
    pub fn positive_by_mode(&self) -> Vec<(usize, f64)> {
        let mut v: Vec<(usize, f64)> =
            self.entries.iter().filter(|e| e.gamma > ZERO_EXPONENT).map(|e| (e.j, e.gamma)).collect();
        v.sort_by_key(|e| e.0);
        v
    }
}

pub fn indicial_set(orbit: &PeriodicOrbit, j_max: usize) -> Result<IndicialSet> {
    if j_max < 1 {
        return Err(Error::InvalidArgument("indicial set needs j_max >= 1".into()));
    }
    let per_mode: Vec<Vec<FloquetExponent>> =
        (0..=j_max).into_par_iter().map(|j| floquet_exponents(orbit, j)).collect::<Result<_>>()?;
    let mut entries: Vec<FloquetExponent> = per_mode.into_iter().flatten().collect();
    entries.sort_by(|a, b| {
        a.gamma
            .abs()
            .total_cmp(&b.gamma.abs())
            .then(a.gamma.total_cmp(&b.gamma))
            .then(a.j.cmp(&b.j))
    });
    let gamma1 = entries.iter().map(|e| e.gamma).filter(|g| *g > ZERO_EXPONENT).reduce(f64::min);
    Ok(IndicialSet { n: orbit.n(), eps: orbit.eps(), j_max, entries, gamma1 })
}

/// γ₁: the smallest positive exponent over modes `0..=j_max` (`j_max ≥ n`).
pub fn sharp_decay_rate(orbit: &PeriodicOrbit, j_max: usize) -> Result<f64> {
    if j_max < orbit.n() {
        return Err(Error::InvalidArgument(format!("sharp decay rate needs j_max >= n = {}", orbit.n())));
    }
    indicial_set(orbit, j_max)?
        .gamma1
        .ok_or(Error::EmptyWeightWindow { end: 0, gamma1: 0.0 })
}

/// Algebraic multiplicity of the multiplier 1 in the mode-0 period map,
/// which is the order of the pole at 0. Fails when the trace is not 2.
pub fn pole_degree_at_zero(orbit: &PeriodicOrbit) -> Result<usize> {
    let m = sl_form(orbit, 0).monodromy(0.0)?;
    if (m.discriminant - 2.0).abs() < PARABOLIC_TOL {
        Ok(2)
    } else {
        Err(Error::NotUnipotent { trace: m.discriminant })
    }
}

/// Delaunay parameters of the asymptotic models at the `k` ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndModel {
    pub n: usize,
    pub eps: Vec<f64>,
}

impl EndModel {
    pub fn new(n: usize, eps: Vec<f64>) -> Result<Self> {
        let ubar = equilibrium_ubar(n)?;
        if let Some(&e) = eps.iter().find(|e| !(**e > 0.0 && **e <= ubar)) {
            return Err(Error::EpsOutOfRange { eps: e, ubar });
        }
        Ok(Self { n, eps })
    }

    pub fn ends(&self) -> usize {
        self.eps.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelativeIndex {
    pub rel_index: usize,
    #[serde(rename = "dim_B")]
    pub dim_bounded_nullspace: usize,
    /// weight used on either side of 0: half the smallest γ₁ over the ends
    pub delta: f64,
    pub pole_degrees: Vec<usize>,
    pub gamma1: Vec<f64>,
}

/// Jump of the index across the weight 0: the sum over ends of the pole
/// order at 0, and half of it as the dimension of the bounded nullspace.
pub fn relative_index(ends: &EndModel) -> Result<RelativeIndex> {
    if ends.ends() < 2 {
        return Err(Error::InvalidArgument(format!("need at least two ends, got {}", ends.ends())));
    }
    let tol = PeriodicOrbit::default_tolerance();
    let per_end: Vec<(usize, f64)> = ends
        .eps
        .par_iter()
        .map(|&eps| {
            let orbit = solve_orbit(ends.n, eps, tol)?;
            Ok((pole_degree_at_zero(&orbit)?, sharp_decay_rate(&orbit, ends.n)?))
        })
        .collect::<Result<_>>()?;
    for (i, &(_, g)) in per_end.iter().enumerate() {
        if !(g > ZERO_EXPONENT) {
            return Err(Error::EmptyWeightWindow { end: i, gamma1: g });
        }
    }
    let delta = 0.5 * per_end.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
    let rel_index: usize = per_end.iter().map(|e| e.0).sum();
    Ok(RelativeIndex {
        rel_index,
        dim_bounded_nullspace: rel_index / 2,
        delta,
        pole_degrees: per_end.iter().map(|e| e.0).collect(),
        gamma1: per_end.iter().map(|e| e.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(n: usize, eps: f64) -> PeriodicOrbit {
        solve_orbit(n, eps, PeriodicOrbit::default_tolerance()).unwrap()
    }

    #[test]
    fn mode_exponents() {
        let o = orbit(4, 0.5);
        let e0 = floquet_exponents(&o, 0).unwrap();
        assert_eq!(e0.len(), 1);
        assert!(e0[0].gamma == 0.0 && e0[0].multiplicity == 2 && e0[0].defective);
        let e1 = floquet_exponents(&o, 1).unwrap();
        assert!((e1[0].gamma - 1.0).abs() < 1e-6 && (e1[1].gamma + 1.0).abs() < 1e-6);
    }

    #[test]
    fn cylinder_exponent_closed_form() {
        // at ū: ψ'' = (j(j+n-2) - (n-2)) ψ
        let o = orbit(4, equilibrium_ubar(4).unwrap());
        let e2 = floquet_exponents(&o, 2).unwrap();
        assert!((e2[0].gamma - 6f64.sqrt()).abs() < 1e-9, "{}", e2[0].gamma);
        assert!((sharp_decay_rate(&o, 4).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(pole_degree_at_zero(&o).unwrap(), 2);
    }

    #[test]
    fn indicial_set_properties() {
        let o = orbit(4, 0.5);
        let set = indicial_set(&o, 6).unwrap();
        assert!(set.is_symmetric(1e-12));
        assert!(set.gamma1.unwrap() <= 1.0 + 1e-9);
        let pos = set.positive_by_mode();
        assert!(pos.windows(2).all(|w| w[1].1 > w[0].1));
    }

    #[test]
    fn corrupted_orbit_is_rejected() {
        let o = orbit(4, 0.5).with_injected_drift(1e-3).unwrap();
        assert!(matches!(pole_degree_at_zero(&o), Err(Error::NotUnipotent { .. })));
    }

    #[test]
    fn relative_index_counts_ends() {
        let ubar = equilibrium_ubar(4).unwrap();
        let r = relative_index(&EndModel::new(4, vec![0.5, 0.5, 0.3]).unwrap()).unwrap();
        assert_eq!((r.rel_index, r.dim_bounded_nullspace), (6, 3));
        let r = relative_index(&EndModel::new(4, vec![ubar, ubar]).unwrap()).unwrap();
        assert_eq!((r.rel_index, r.dim_bounded_nullspace), (4, 2));
        assert!(relative_index(&EndModel::new(4, vec![0.5]).unwrap()).is_err());
    }
}
