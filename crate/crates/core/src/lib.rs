//! Numerical laboratory for the Delaunay family of constant scalar curvature
//! metrics on the cylinder `R × S^{n-1}`.
//!
//! The crate builds the periodic orbits `u_ε`, the Jacobi fields of the
//! linearized operator, the Floquet/Bloch band structure of its
//! cross-sectional modes, indicial data and relative index, and the
//! Pohožaev invariants. Every exact identity that these objects satisfy is
//! exposed as a check in [`acceptance`].

pub mod acceptance;
pub mod config;
pub mod delaunay;
pub mod export;
pub mod floquet;
pub mod indicial;
pub mod jacobi;
pub mod numerics;
pub mod pohozaev;

pub use config::{EpsGrid, RunConfig, DEFAULT_SEED};
pub use delaunay::{
    closed_form_n4, equilibrium_ubar, hamiltonian, homoclinic_u0, period_r_oracle, period_t_oracle, solve_orbit,
    Coordinate, CylinderFunction, PeriodicOrbit,
};
pub use floquet::{BandStructure, MonodromyResult, SphereMode, SturmLiouvilleForm};
pub use indicial::{AsymptoteFit, EndModel, IndicialSet};
pub use jacobi::{DeficiencyCoefficients, GrowthClass, JacobiField, JacobiKind};
pub use numerics::{NumericsError, Tolerance, Trajectory};
pub use pohozaev::{ConformalKillingField, PohozaevInvariant, TraceFreeRicciSection};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("dimension n = {n} is not supported (need n >= 3)")]
    InvalidDimension { n: usize },
    #[error("Delaunay parameter {eps} outside (0, {ubar}]")]
    EpsOutOfRange { eps: f64, ubar: f64 },
    #[error("Delaunay parameter {eps} below the conditioning floor {floor}")]
    EpsBelowFloor { eps: f64, floor: f64 },
    #[error("period detection failed: {0}")]
    PeriodDetection(String),
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("mode mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("ill-conditioned {what} (condition estimate {condition:e})")]
    IllConditioned { what: &'static str, condition: f64 },
    #[error("mode-0 monodromy is not unipotent: trace {trace}")]
    NotUnipotent { trace: f64 },
    #[error("no admissible weight: end {end} has decay rate {gamma1}")]
    EmptyWeightWindow { end: usize, gamma1: f64 },
    #[error("series diverges: Im(zeta) = {im_zeta} is not below -{decay}")]
    DivergentSeries { im_zeta: f64, decay: f64 },
    #[error("fit did not converge after {iterations} iterations (misfit {misfit:e})")]
    FitDidNotConverge { iterations: usize, misfit: f64 },
    #[error("c_n calibration deviates by {deviation:e} (relative)")]
    CalibrationDeviation { deviation: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
