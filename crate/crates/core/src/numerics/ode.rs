//! Adaptive Verner 9(8) integration with a ninth-order continuous extension.

use super::roots::brent;
use super::tableau::{A, A_DENSE, B_DENSE, B_HIGH, B_LOW, C, C_DENSE, EXTRA_STAGES, ORDER, STAGES};
use super::{NumericsError, Tolerance};

const SAFETY: f64 = 0.9;
const MIN_SCALE: f64 = 0.2;
const MAX_SCALE: f64 = 5.0;
const MAX_STEPS: usize = 2_000_000;

/// One accepted step together with the polynomial coefficients of its
/// continuous extension: `y(t0 + s h) = y0 + sum_p coeffs[p] s^(p+1)`.
#[derive(Debug, Clone)]
pub struct DenseStep {
    t0: f64,
    h: f64,
    y0: Vec<f64>,
    coeffs: Vec<f64>,
}

impl DenseStep {
    pub fn t_start(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + self.h
    }

    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        let dim = self.y0.len();
        let s = (t - self.t0) / self.h;
        for d in 0..dim {
            let mut acc = 0.0;
            for p in (0..ORDER).rev() {
                acc = acc * s + self.coeffs[p * dim + d];
            }
            out[d] = self.y0[d] + acc * s;
        }
    }

    pub fn derivative_into(&self, t: f64, out: &mut [f64]) {
        let dim = self.y0.len();
        let s = (t - self.t0) / self.h;
        for d in 0..dim {
            let mut acc = 0.0;
            for p in (0..ORDER).rev() {
                acc = acc * s + (p + 1) as f64 * self.coeffs[p * dim + d];
            }
            out[d] = acc / self.h;
        }
    }
}

/// Accepted knots of an integration plus the dense output between them.
#[derive(Debug, Clone)]
pub struct Trajectory {
    dim: usize,
    times: Vec<f64>,
    states: Vec<f64>,
    steps: Vec<DenseStep>,
}

impl Trajectory {
    fn new(t0: f64, y0: &[f64]) -> Self {
        Self { dim: y0.len(), times: vec![t0], states: y0.to_vec(), steps: Vec::new() }
    }

    fn push(&mut self, step: DenseStep, y1: &[f64]) {
        self.times.push(step.t_end());
        self.states.extend_from_slice(y1);
        self.steps.push(step);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t_start(&self) -> f64 {
        self.times[0]
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().expect("trajectory has at least one knot")
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn knot_state(&self, i: usize) -> &[f64] {
        &self.states[i * self.dim..(i + 1) * self.dim]
    }

    pub fn steps(&self) -> &[DenseStep] {
        &self.steps
    }

    fn locate(&self, t: f64) -> Result<usize, NumericsError> {
        let (t0, t1) = (self.t_start(), self.t_end());
        let slack = 1e-12 * (1.0 + t0.abs().max(t1.abs()));
        if !(t >= t0 - slack && t <= t1 + slack) || self.steps.is_empty() {
            return Err(NumericsError::OutOfRange { t, t0, t1 });
        }
        // index of the last knot <= t, clamped to a valid step
        let idx = self.times.partition_point(|&k| k <= t);
        Ok(idx.saturating_sub(1).min(self.steps.len() - 1))
    }

    pub fn interpolate_into(&self, t: f64, out: &mut [f64]) -> Result<(), NumericsError> {
        let i = self.locate(t)?;
        if t == self.times[self.times.len() - 1] {
            out.copy_from_slice(self.knot_state(self.times.len() - 1));
        } else {
            self.steps[i].eval_into(t, out);
        }
        Ok(())
    }

    pub fn interpolate(&self, t: f64) -> Result<Vec<f64>, NumericsError> {
        let mut out = vec![0.0; self.dim];
        self.interpolate_into(t, &mut out)?;
        Ok(out)
    }

    /// Time derivative of the dense interpolant.
    pub fn derivative(&self, t: f64) -> Result<Vec<f64>, NumericsError> {
        let i = self.locate(t)?;
        let mut out = vec![0.0; self.dim];
        self.steps[i].derivative_into(t, &mut out);
        Ok(out)
    }
}

/// Step-by-step driver; `integrate_ivp` and `find_event` are thin loops over it.
pub struct Integrator<F> {
    field: F,
    tol: Tolerance,
    t: f64,
    y: Vec<f64>,
    h: f64,
    k: Vec<Vec<f64>>,
    scratch: Vec<f64>,
    steps_taken: usize,
}

impl<F> Integrator<F>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    pub fn new(field: F, t0: f64, y0: &[f64], tol: Tolerance) -> Result<Self, NumericsError> {
        if y0.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::NonFinite { t: t0 });
        }
        let dim = y0.len();
        let mut me = Self {
            field,
            tol,
            t: t0,
            y: y0.to_vec(),
            h: 0.0,
            k: vec![vec![0.0; dim]; STAGES + EXTRA_STAGES],
            scratch: vec![0.0; dim],
            steps_taken: 0,
        };
        me.h = me.initial_step();
        Ok(me)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn state(&self) -> &[f64] {
        &self.y
    }

    fn rms(&self, v: &[f64], reference: &[f64]) -> f64 {
        let sum: f64 = v
            .iter()
            .zip(reference)
            .map(|(x, r)| {
                let w = self.tol.weight(*r, *r);
                (x / w).powi(2)
            })
            .sum();
        (sum / v.len().max(1) as f64).sqrt()
    }

    fn initial_step(&mut self) -> f64 {
        let dim = self.y.len();
        let mut f0 = vec![0.0; dim];
        (self.field)(self.t, &self.y, &mut f0);
        let d0 = self.rms(&self.y, &self.y);
        let d1 = self.rms(&f0, &self.y);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let y1: Vec<f64> = self.y.iter().zip(&f0).map(|(y, f)| y + h0 * f).collect();
        let mut f1 = vec![0.0; dim];
        (self.field)(self.t + h0, &y1, &mut f1);
        let diff: Vec<f64> = f1.iter().zip(&f0).map(|(a, b)| a - b).collect();
        let d2 = self.rms(&diff, &self.y) / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(1.0 / (ORDER as f64 + 1.0))
        };
        (100.0 * h0).min(h1)
    }

    fn stage_state(&mut self, i: usize, h: f64, row: &[f64]) {
        let dim = self.y.len();
        for d in 0..dim {
            let mut acc = 0.0;
            for (j, a) in row.iter().enumerate().take(i) {
                if *a != 0.0 {
                    acc += a * self.k[j][d];
                }
            }
            self.scratch[d] = self.y[d] + h * acc;
        }
    }

    /// Attempt steps until one is accepted, never stepping past `t_stop`.
    pub fn step(&mut self, t_stop: f64) -> Result<DenseStep, NumericsError> {
        let dim = self.y.len();
        loop {
            if self.steps_taken >= MAX_STEPS {
                return Err(NumericsError::MaxSteps { t: self.t, max_steps: MAX_STEPS });
            }
            self.steps_taken += 1;
            let remaining = t_stop - self.t;
            let mut h = self.h.min(remaining);
            // avoid a sliver of a final step
            if remaining - h < 1e-3 * h {
                h = remaining;
            }
            if h <= 1e-14 * (1.0 + self.t.abs()) {
                return Err(NumericsError::StepSizeUnderflow { t: self.t });
            }

            (self.field)(self.t, &self.y, &mut self.k[0]);
            for i in 1..STAGES {
                self.stage_state(i, h, A[i]);
                (self.field)(self.t + C[i] * h, &self.scratch, &mut self.k[i]);
            }
            let mut y_high = vec![0.0; dim];
            let mut err = vec![0.0; dim];
            for d in 0..dim {
                let (mut hi, mut lo) = (0.0, 0.0);
                for i in 0..STAGES {
                    hi += B_HIGH[i] * self.k[i][d];
                    lo += B_LOW[i] * self.k[i][d];
                }
                y_high[d] = self.y[d] + h * hi;
                err[d] = h * (hi - lo);
            }
            let finite = y_high.iter().all(|v| v.is_finite())
                && self.k.iter().take(STAGES).all(|k| k.iter().all(|v| v.is_finite()));
            let err_norm = if finite {
                let sum: f64 = (0..dim)
                    .map(|d| (err[d] / self.tol.weight(self.y[d], y_high[d])).powi(2))
                    .sum();
                (sum / dim.max(1) as f64).sqrt()
            } else {
                f64::INFINITY
            };

            if err_norm <= 1.0 {
                for e in 0..EXTRA_STAGES {
                    let row = A_DENSE[e];
                    for d in 0..dim {
                        let mut acc = 0.0;
                        for (j, a) in row.iter().enumerate().take(STAGES + e) {
                            if *a != 0.0 {
                                acc += a * self.k[j][d];
                            }
                        }
                        self.scratch[d] = self.y[d] + h * acc;
                    }
                    (self.field)(self.t + C_DENSE[e] * h, &self.scratch, &mut self.k[STAGES + e]);
                }
                let mut coeffs = vec![0.0; ORDER * dim];
                for p in 0..ORDER {
                    for d in 0..dim {
                        let mut acc = 0.0;
                        for (i, row) in B_DENSE.iter().enumerate() {
                            if row[p] != 0.0 {
                                acc += row[p] * self.k[i][d];
                            }
                        }
                        coeffs[p * dim + d] = h * acc;
                    }
                }
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(NumericsError::NonFinite { t: self.t });
                }
                let step = DenseStep { t0: self.t, h, y0: self.y.clone(), coeffs };
                self.t = if h == remaining { t_stop } else { self.t + h };
                self.y = y_high;
                let scale = if err_norm == 0.0 {
                    MAX_SCALE
                } else {
                    (SAFETY * err_norm.powf(-1.0 / ORDER as f64)).clamp(MIN_SCALE, MAX_SCALE)
                };
                self.h = h * scale;
                return Ok(step);
            }
            let scale = if err_norm.is_finite() {
                (SAFETY * err_norm.powf(-1.0 / ORDER as f64)).clamp(MIN_SCALE, 1.0)
            } else {
                MIN_SCALE
            };
            self.h = h * scale;
        }
    }
}

/// Integrate `y' = field(t, y)` over `t_span` with dense output.
///
/// `field` writes the derivative into its third argument.
pub fn integrate_ivp<F>(
    field: F,
    y0: &[f64],
    t_span: (f64, f64),
    tol: Tolerance,
) -> Result<Trajectory, NumericsError>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let (t0, t1) = t_span;
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(NumericsError::InvalidSpan { t0, t1 });
    }
    let mut integ = Integrator::new(field, t0, y0, tol)?;
    let mut traj = Trajectory::new(t0, y0);
    while integ.t() < t1 {
        let step = integ.step(t1)?;
        traj.push(step, integ.state());
    }
    Ok(traj)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    /// event goes from negative to non-negative
    Rising,
    /// event goes from positive to non-positive
    Falling,
    Either,
}

impl Crossing {
    fn matches(self, before: f64, after: f64) -> bool {
        match self {
            Crossing::Rising => before < 0.0 && after >= 0.0,
            Crossing::Falling => before > 0.0 && after <= 0.0,
            Crossing::Either => (before < 0.0 && after >= 0.0) || (before > 0.0 && after <= 0.0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EventHit {
    pub t: f64,
    pub state: Vec<f64>,
    /// Trajectory up to (and covering) the step that contains the event.
    pub trajectory: Trajectory,
}

/// Integrate from `t_span.0` until `event(state)` crosses zero in the given
/// direction, or fail once `t_span.1` is reached.
///
/// The crossing time is refined on the dense output with Brent's method
/// until `|event| < tol.abs()`.
pub fn find_event<F, G>(
    field: F,
    y0: &[f64],
    t_span: (f64, f64),
    event: G,
    direction: Crossing,
    tol: Tolerance,
) -> Result<EventHit, NumericsError>
where
    F: Fn(f64, &[f64], &mut [f64]),
    G: Fn(&[f64]) -> f64,
{
    let (t0, horizon) = t_span;
    if !(horizon > t0) {
        return Err(NumericsError::InvalidSpan { t0, t1: horizon });
    }
    let mut integ = Integrator::new(field, t0, y0, tol)?;
    let mut traj = Trajectory::new(t0, y0);
    let mut g_prev = event(y0);
    let mut buf = vec![0.0; y0.len()];
    while integ.t() < horizon {
        let step = integ.step(horizon)?;
        let g_next = event(integ.state());
        let hit = direction.matches(g_prev, g_next);
        let (a, b) = (step.t_start(), step.t_end());
        traj.push(step, integ.state());
        if hit {
            let last = traj.steps.last().expect("just pushed");
            let g_of = |t: f64| {
                let mut y = vec![0.0; y0.len()];
                last.eval_into(t, &mut y);
                event(&y)
            };
            let t_star = if g_next == 0.0 {
                b
            } else {
                brent(g_of, a, b, 1e-15 * (1.0 + b.abs()), tol.abs())?
            };
            last.eval_into(t_star, &mut buf);
            return Ok(EventHit { t: t_star, state: buf, trajectory: traj });
        }
        g_prev = g_next;
    }
    Err(NumericsError::EventNotFound { horizon })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tight() -> Tolerance {
        Tolerance::new(1e-13, 1e-13).unwrap()
    }

    fn oscillator(_t: f64, y: &[f64], dy: &mut [f64]) {
        dy[0] = y[1];
        dy[1] = -y[0];
    }

    #[test]
    fn exponential_growth() {
        let traj = integrate_ivp(|_, y, dy| dy[0] = y[0], &[1.0], (0.0, 1.0), Tolerance::default()).unwrap();
        let end = traj.knot_state(traj.len() - 1)[0];
        assert!((end - 1f64.exp()).abs() < 1e-10, "{end}");
        assert_eq!(traj.t_end(), 1.0);
    }

    #[test]
    fn constant_field_stays_put() {
        let traj = integrate_ivp(|_, _, dy| dy[0] = 0.0, &[3.25], (0.0, 5.0), Tolerance::default()).unwrap();
        for i in 0..traj.len() {
            assert_eq!(traj.knot_state(i)[0], 3.25);
        }
        assert_eq!(traj.interpolate(2.2).unwrap()[0], 3.25);
    }

    #[test]
    fn oscillator_returns_after_full_period() {
        let traj = integrate_ivp(oscillator, &[1.0, 0.0], (0.0, 2.0 * PI), Tolerance::default()).unwrap();
        let y = traj.knot_state(traj.len() - 1);
        assert!((y[0] - 1.0).abs() < 1e-9 && y[1].abs() < 1e-9, "{y:?}");
    }

    #[test]
    fn dense_output_reproduces_knots_and_solution() {
        let traj = integrate_ivp(oscillator, &[1.0, 0.0], (0.0, 10.0), tight()).unwrap();
        for i in 0..traj.len() {
            let t = traj.times()[i];
            let y = traj.interpolate(t).unwrap();
            let k = traj.knot_state(i);
            assert!((y[0] - k[0]).abs() < 1e-14 && (y[1] - k[1]).abs() < 1e-14);
        }
        for j in 0..500 {
            let t = 10.0 * (j as f64 + 0.37) / 500.0;
            let y = traj.interpolate(t).unwrap();
            assert!((y[0] - t.cos()).abs() < 1e-11, "t={t}");
            // ODE residual of the interpolant
            let dy = traj.derivative(t).unwrap();
            assert!((dy[0] - y[1]).abs() < 1e-10 && (dy[1] + y[0]).abs() < 1e-10);
        }
        assert!(traj.interpolate(10.5).is_err());
    }

    #[test]
    fn tighter_tolerance_reduces_error_at_advertised_order() {
        let errs: Vec<(f64, usize)> = [1e-6, 1e-8, 1e-10]
            .iter()
            .map(|&tol| {
                let traj = integrate_ivp(|_, y, dy| dy[0] = y[0], &[1.0], (0.0, 2.0), Tolerance::uniform(tol).unwrap())
                    .unwrap();
                let err = (traj.knot_state(traj.len() - 1)[0] - 2f64.exp()).abs();
                (err, traj.len())
            })
            .collect();
        for w in errs.windows(2) {
            let (e0, n0) = w[0];
            let (e1, n1) = w[1];
            assert!(e1 < e0 || e1 < 1e-13, "{errs:?}");
            assert!(n1 >= n0);
            // error ~ steps^-9: more steps must not be wasted
            if e1 > 1e-13 {
                let observed = (e0 / e1).ln() / (n1 as f64 / n0 as f64).ln();
                assert!(observed > 5.0, "observed order {observed} from {errs:?}");
            }
        }
    }

    #[test]
    fn reversed_span_rejected() {
        assert!(matches!(
            integrate_ivp(oscillator, &[1.0, 0.0], (1.0, 0.0), Tolerance::default()),
            Err(NumericsError::InvalidSpan { .. })
        ));
    }

    #[test]
    fn singular_field_underflows() {
        // y' = y^2 blows up at t = 1
        let r = integrate_ivp(|_, y, dy| dy[0] = y[0] * y[0], &[1.0], (0.0, 2.0), Tolerance::default());
        assert!(
            matches!(r, Err(NumericsError::StepSizeUnderflow { t }) if (t - 1.0).abs() < 1e-3)
                || matches!(r, Err(NumericsError::NonFinite { .. }) | Err(NumericsError::MaxSteps { .. })),
            "{r:?}"
        );
    }

    #[test]
    fn oscillator_event_at_pi() {
        let hit = find_event(oscillator, &[1.0, 0.0], (0.0, 10.0), |y| y[1], Crossing::Rising, tight()).unwrap();
        assert!((hit.t - PI).abs() < 1e-9, "{}", hit.t);
        assert!(hit.state[1].abs() < 1e-13);
    }

    #[test]
    fn decay_event_at_ln2() {
        let hit = find_event(|_, y, dy| dy[0] = -y[0], &[1.0], (0.0, 5.0), |y| y[0] - 0.5, Crossing::Falling, tight())
            .unwrap();
        assert!((hit.t - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn missing_event_reports_horizon() {
        let r = find_event(|_, y, dy| dy[0] = -y[0], &[1.0], (0.0, 3.0), |y| y[0] + 1.0, Crossing::Either, tight());
        assert!(matches!(r, Err(NumericsError::EventNotFound { horizon }) if horizon == 3.0));
    }
}
