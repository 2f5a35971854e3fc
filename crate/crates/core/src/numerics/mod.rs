//! Numerical kernels shared by every other module: adaptive Runge–Kutta
//! integration with dense output, event location, bracketed root finding,
//! adaptive quadrature with square-root endpoint handling, and 2×2 eigen
//! decomposition.
//!
//! Everything here is a pure function of its inputs.

mod fd;
mod linalg;
mod ode;
mod quadrature;
mod roots;
mod tableau;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fd::{central_first_derivative, central_second_derivative};
pub use linalg::{eigen_2x2, Eigen2, DEFECTIVE_THRESHOLD};
pub use ode::{find_event, integrate_ivp, Crossing, DenseStep, EventHit, Integrator, Trajectory};
pub use quadrature::{adaptive_quadrature, integrate_endpoint_singular, gauss_kronrod_15};
pub use roots::brent;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("tolerances must be strictly positive (abs={abs}, rel={rel})")]
    InvalidTolerance { abs: f64, rel: f64 },
    #[error("integration interval [{t0}, {t1}] is empty or reversed")]
    InvalidSpan { t0: f64, t1: f64 },
    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },
    #[error("non-finite state encountered at t = {t}")]
    NonFinite { t: f64 },
    #[error("maximum number of steps ({max_steps}) exceeded at t = {t}")]
    MaxSteps { t: f64, max_steps: usize },
    #[error("event did not trigger before the horizon t = {horizon}")]
    EventNotFound { horizon: f64 },
    #[error("root is not bracketed: f({a}) = {fa}, f({b}) = {fb}")]
    NoBracket { a: f64, b: f64, fa: f64, fb: f64 },
    #[error("root finding did not converge after {iterations} iterations")]
    RootNotConverged { iterations: usize },
    #[error("quadrature did not converge: estimate {estimate}, error {error}")]
    QuadratureNotConverged { estimate: f64, error: f64 },
    #[error("time {t} outside trajectory range [{t0}, {t1}]")]
    OutOfRange { t: f64, t0: f64, t1: f64 },
}

/// Absolute/relative error target used by the integrator, root finder and
/// quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    abs_tol: f64,
    rel_tol: f64,
}

impl Tolerance {
    pub const DEFAULT_ABS: f64 = 1e-12;
    pub const DEFAULT_REL: f64 = 1e-10;

    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self, NumericsError> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) || !abs_tol.is_finite() || !rel_tol.is_finite() {
            return Err(NumericsError::InvalidTolerance { abs: abs_tol, rel: rel_tol });
        }
        Ok(Self { abs_tol, rel_tol })
    }

    /// Both tolerances equal to `tol`.
    pub fn uniform(tol: f64) -> Result<Self, NumericsError> {
        Self::new(tol, tol)
    }

    pub fn abs(&self) -> f64 {
        self.abs_tol
    }

    pub fn rel(&self) -> f64 {
        self.rel_tol
    }

    /// Multiply both tolerances by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, NumericsError> {
        Self::new(self.abs_tol * factor, self.rel_tol * factor)
    }

    pub(crate) fn weight(&self, a: f64, b: f64) -> f64 {
        self.abs_tol + self.rel_tol * a.abs().max(b.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs_tol: Self::DEFAULT_ABS, rel_tol: Self::DEFAULT_REL }
    }
}
