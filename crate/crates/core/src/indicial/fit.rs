//! Fit of end data to a Delaunay solution with an exponentially decaying
//! correction, `w(t) ≈ u_ε(t + η) (1 + c e^{-α t})`.

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::delaunay::{equilibrium_ubar, solve_orbit, Coordinate, CylinderFunction, PeriodicOrbit};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoteFit {
    pub eps: f64,
    /// shift `η` in `u_ε(t + η)`, normalized to `(-T/2, T/2]`
    pub eta: f64,
    pub c: f64,
    pub alpha: f64,
    /// RMS of the residual over the samples
    pub misfit: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub max_iterations: usize,
    /// relative parameter change at which the iteration stops
    pub step_tol: f64,
    /// decay rate used to seed `c`
    pub alpha_seed: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { max_iterations: 200, step_tol: 1e-12, alpha_seed: 1.0 }
    }
}

struct Model<'a> {
    n: usize,
    points: &'a [f64],
    data: &'a [f64],
    ubar: f64,
}

struct Evaluation {
    orbit: PeriodicOrbit,
    residual: Vec<f64>,
    cost: f64,
}

impl Model<'_> {
    fn evaluate(&self, p: &Vector4<f64>) -> Result<Evaluation> {
        let orbit = solve_orbit(self.n, p[0], PeriodicOrbit::default_tolerance())?;
        let residual: Vec<f64> = self
            .points
            .iter()
            .zip(self.data)
            .map(|(&t, &w)| orbit.u(t + p[1]) * (1.0 + p[2] * (-p[3] * t).exp()) - w)
            .collect();
        let cost = 0.5 * residual.iter().map(|r| r * r).sum::<f64>();
        Ok(Evaluation { orbit, residual, cost })
    }

    /// Normal equations `JᵀJ` and `Jᵀr`; the ε column comes from the
    /// variational equations carried by the orbit.
    fn normal_equations(&self, p: &Vector4<f64>, eval: &Evaluation) -> (Matrix4<f64>, Vector4<f64>) {
        let mut jtj = Matrix4::zeros();
        let mut jtr = Vector4::zeros();
        for (i, &t) in self.points.iter().enumerate() {
            let s = eval.orbit.state(t + p[1]);
            let e = (-p[3] * t).exp();
            let g = 1.0 + p[2] * e;
            let row = Vector4::new(s.du * g, s.v * g, s.u * e, -p[2] * t * s.u * e);
            jtj += row * row.transpose();
            jtr += row * eval.residual[i];
        }
        (jtj, jtr)
    }

    fn clamp(&self, mut p: Vector4<f64>, previous: &Vector4<f64>) -> Vector4<f64> {
        p[0] = p[0].clamp(1e-6, self.ubar * (1.0 - 1e-9));
        if !(p[3] > 0.0) {
            p[3] = 0.5 * previous[3];
        }
        p
    }
}

fn local_maxima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1])
        .collect()
}

/// Vertex of the parabola through three equally spaced samples.
fn parabolic_peak(points: &[f64], values: &[f64], i: usize) -> f64 {
    let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
    let denom = a - 2.0 * b + c;
    let h = points[i + 1] - points[i];
    if denom == 0.0 {
        points[i]
    } else {
        points[i] + 0.5 * h * (a - c) / denom
    }
}

fn wrap(eta: f64, period: f64) -> f64 {
    let mut x = eta.rem_euclid(period);
    if x > 0.5 * period {
        x -= period;
    }
    x
}

/// Levenberg–Marquardt fit of `w(t) ≈ u_ε(t + η)(1 + c e^{-αt})` over
/// `(ε, η, c, α)`, seeded from the maxima of the data.
pub fn fit_asymptote(w: &CylinderFunction, n: usize, options: FitOptions) -> Result<AsymptoteFit> {
    if w.coordinate() != Coordinate::Cylinder {
        return Err(Error::InvalidArgument("expected cylinder samples".into()));
    }
    let ubar = equilibrium_ubar(n)?;
    let (points, data) = (w.points(), w.values());
    let maxima = local_maxima(data);
    if maxima.len() < 2 {
        return Err(Error::InvalidArgument("fit window shows fewer than two maxima".into()));
    }
    // seed ε from the minimum over the later half, where the correction is smallest
    let half = data.len() / 2;
    let eps0 = data[half..].iter().copied().fold(f64::INFINITY, f64::min).clamp(1e-6, ubar * (1.0 - 1e-6));
    let seed_orbit = solve_orbit(n, eps0, PeriodicOrbit::default_tolerance())?;
    let period = seed_orbit.period();
    let (t0, t1) = w.window();
    if t1 - t0 < 3.0 * period * (1.0 - 1e-9) {
        return Err(Error::InvalidArgument(format!(
            "fit window [{t0}, {t1}] covers fewer than three periods ({period})"
        )));
    }
    let last_peak = parabolic_peak(points, data, *maxima.last().expect("two maxima"));
    let eta0 = wrap(-last_peak, period);
    // linear seed for c at the seed decay rate
    let (mut num, mut den) = (0.0, 0.0);
    for (&t, &x) in points.iter().zip(data) {
        let base = seed_orbit.u(t + eta0);
        let e = (-options.alpha_seed * t).exp();
        num += (x / base - 1.0) * e;
        den += e * e;
    }
    let c0 = if den > 0.0 { num / den } else { 0.0 };

    let model = Model { n, points, data, ubar };
    let mut p = Vector4::new(eps0, eta0, c0, options.alpha_seed);
    let mut eval = model.evaluate(&p)?;
    let mut lambda = 1e-3;
    for iteration in 1..=options.max_iterations {
        let (jtj, jtr) = model.normal_equations(&p, &eval);
        let diag_floor = 1e-12 * jtj.diagonal().max();
        let mut accepted = false;
        while lambda < 1e20 {
            let mut a = jtj;
            for k in 0..4 {
                a[(k, k)] += lambda * jtj[(k, k)].max(diag_floor);
            }
            let Some(step) = a.lu().solve(&(-jtr)) else {
                lambda *= 10.0;
                continue;
            };
            let trial = model.clamp(p + step, &p);
            let trial_eval = match model.evaluate(&trial) {
                Ok(e) => e,
                Err(_) => {
                    lambda *= 10.0;
                    continue;
                }
            };
            if trial_eval.cost <= eval.cost {
                let change = (0..4).map(|k| (trial[k] - p[k]).abs() / (1.0 + p[k].abs())).fold(0.0, f64::max);
                p = trial;
                eval = trial_eval;
                lambda = (lambda / 3.0).max(1e-12);
                accepted = true;
                if change < options.step_tol {
                    return Ok(finish(&p, &eval, iteration, data.len()));
                }
                break;
            }
            lambda *= 4.0;
        }
        if !accepted {
            // no downhill step left at any damping: a stationary point
            return Ok(finish(&p, &eval, iteration, data.len()));
        }
    }
    Err(Error::FitDidNotConverge { iterations: options.max_iterations, misfit: (2.0 * eval.cost / data.len() as f64).sqrt() })
}

fn finish(p: &Vector4<f64>, eval: &Evaluation, iterations: usize, count: usize) -> AsymptoteFit {
    AsymptoteFit {
        eps: p[0],
        eta: wrap(p[1], eval.orbit.period()),
        c: p[2],
        alpha: p[3],
        misfit: (2.0 * eval.cost / count as f64).sqrt(),
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manufactured(eps: f64, eta: f64, c: f64, alpha: f64, periods: f64) -> CylinderFunction {
        let o = solve_orbit(4, eps, PeriodicOrbit::default_tolerance()).unwrap();
        let t1 = periods * o.period();
        let count = (64.0 * periods) as usize + 1;
        CylinderFunction::sample(Coordinate::Cylinder, (0.0, t1), count, Some(0), |t| {
            o.u(t + eta) * (1.0 + c * (-alpha * t).exp())
        })
        .unwrap()
    }

    #[test]
    fn exact_delaunay_data() {
        let w = manufactured(0.4, 0.3, 0.0, 1.0, 4.0);
        let fit = fit_asymptote(&w, 4, FitOptions::default()).unwrap();
        assert!((fit.eps - 0.4).abs() < 1e-6, "{fit:?}");
        assert!((fit.eta - 0.3).abs() < 1e-6, "{fit:?}");
        assert!(fit.c.abs() < 1e-6, "{fit:?}");
    }

    #[test]
    fn decaying_correction() {
        let w = manufactured(0.4, 0.3, 0.01, 1.0, 4.0);
        let fit = fit_asymptote(&w, 4, FitOptions::default()).unwrap();
        assert!((fit.eps - 0.4).abs() < 1e-4 && (fit.eta - 0.3).abs() < 1e-4, "{fit:?}");
        assert!((fit.alpha - 1.0).abs() < 1e-3, "{fit:?}");
    }

    #[test]
    fn short_window_rejected() {
        let w = manufactured(0.4, 0.3, 0.0, 1.0, 2.0);
        assert!(fit_asymptote(&w, 4, FitOptions::default()).is_err());
    }
}
