//! Discrete Fourier–Laplace transform in the period direction,
//! `ĥ(t, ζ) = Σ_k e^{-ikζ} h(t + kP)`, for `h` supported in `t ≥ 0`.

use num_complex::Complex64;

use crate::{Error, Result};

const MAX_TERMS: usize = 1_000_000;

/// `ĥ(t, ζ)` for `h = O(e^{γ t})`; the series converges when
/// `Im ζ < -γ`. Terms are summed until the geometric tail bound falls
/// below `1e-16` of the running sum for four consecutive terms.
pub fn fourier_laplace<F: Fn(f64) -> f64>(h: F, t: f64, zeta: Complex64, period: f64, growth: f64) -> Result<Complex64> {
    if !(period > 0.0) {
        return Err(Error::NonPositive { what: "period", value: period });
    }
    // per-period ratio bound of successive terms
    let ratio = ((zeta.im + growth) * period).exp();
    if !(ratio < 1.0) {
        return Err(Error::DivergentSeries { im_zeta: zeta.im, decay: growth });
    }
    // h vanishes for negative arguments
    let k0 = (-t / period).ceil() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for i in 0..MAX_TERMS {
        let k = k0 + i as i64;
        let phase = Complex64::new(0.0, -(k as f64)) * zeta;
        let term = phase.exp() * h(t + k as f64 * period);
        sum += term;
        let tail = term.norm() * ratio / (1.0 - ratio);
        // a single small term may be an interior zero of h
        quiet = if tail <= 1e-16 * sum.norm() || term.norm() == 0.0 { quiet + 1 } else { 0 };
        if quiet >= 4 {
            return Ok(sum);
        }
    }
    Err(Error::DivergentSeries { im_zeta: zeta.im, decay: growth })
}

/// Recover `h(t + kP)` from `μ ↦ ĥ(t, μ + i·im)` by the trapezoid rule on
/// `points` nodes of `[0, 2π]`:
/// `h(t + kP) = (1/2π) ∫ e^{ikζ} ĥ(t, ζ) dμ`.
pub fn inverse_fourier_laplace<F: Fn(Complex64) -> Complex64>(hat: F, k: i64, im: f64, points: usize) -> f64 {
    let points = points.max(1);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..points {
        let mu = std::f64::consts::TAU * i as f64 / points as f64;
        let zeta = Complex64::new(mu, im);
        acc += (Complex64::new(0.0, k as f64) * zeta).exp() * hat(zeta);
    }
    (acc / points as f64).re
}
