use serde::{Deserialize, Serialize};

use super::{check_dimension, PeriodicOrbit};
use crate::{Error, Result};

/// Which variable the abscissae of a [`CylinderFunction`] measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinate {
    /// cylinder coordinate `t`
    Cylinder,
    /// geodesic coordinate `r`, `dr/dt = u^{2/(n-2)}`
    Geodesic,
    /// radial ball coordinate `ρ = e^{-t}`
    Ball,
}

/// Samples of a scalar function of one variable on a finite window,
/// optionally tagged with the spherical-harmonic mode it belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderFunction {
    coordinate: Coordinate,
    points: Vec<f64>,
    values: Vec<f64>,
    mode: Option<usize>,
}

impl CylinderFunction {
    pub fn new(coordinate: Coordinate, points: Vec<f64>, values: Vec<f64>, mode: Option<usize>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::LengthMismatch { left: points.len(), right: values.len() });
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument("sample points must be finite".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("sample points must be strictly increasing".into()));
        }
        Ok(Self { coordinate, points, values, mode })
    }

    /// Sample `f` at `count` equally spaced points of `[a, b]` (both ends
    /// included).
    pub fn sample<F: Fn(f64) -> f64>(
        coordinate: Coordinate,
        window: (f64, f64),
        count: usize,
        mode: Option<usize>,
        f: F,
    ) -> Result<Self> {
        let (a, b) = window;
        if count < 2 || !(b > a) {
            return Err(Error::InvalidArgument(format!("bad sampling window [{a}, {b}] with {count} points")));
        }
        let h = (b - a) / (count - 1) as f64;
        let points: Vec<f64> = (0..count).map(|i| if i + 1 == count { b } else { a + h * i as f64 }).collect();
        let values = points.iter().map(|&t| f(t)).collect();
        Self::new(coordinate, points, values, mode)
    }

    pub fn coordinate(&self) -> Coordinate {
        self.coordinate
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mode(&self) -> Option<usize> {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn window(&self) -> (f64, f64) {
        (self.points[0], self.points[self.points.len() - 1])
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn map<F: Fn(f64, f64) -> f64>(&self, f: F) -> Self {
        let values = self.points.iter().zip(&self.values).map(|(&t, &v)| f(t, v)).collect();
        Self { values, ..self.clone() }
    }

    /// Grid spacing, if the samples are equally spaced.
    pub fn uniform_step(&self) -> Option<f64> {
        if self.points.len() < 2 {
            return None;
        }
        let h = (self.points[self.points.len() - 1] - self.points[0]) / (self.points.len() - 1) as f64;
        let slack = 1e-9 * h;
        self.points.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= slack).then_some(h)
    }

    /// First and second derivatives by eighth-order central differences at
    /// the interior points `4..len-4`.
    pub fn central_derivatives(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let h = self
            .uniform_step()
            .ok_or_else(|| Error::InvalidArgument("finite differences need a uniform grid".into()))?;
        if self.len() < 9 {
            return Err(Error::InvalidArgument("need at least 9 samples for differentiation".into()));
        }
        const D1: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
        const D2: [f64; 4] = [8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];
        const D2_CENTER: f64 = -205.0 / 72.0;
        let y = &self.values;
        let mut first = Vec::with_capacity(self.len() - 8);
        let mut second = Vec::with_capacity(self.len() - 8);
        for i in 4..self.len() - 4 {
            let mut a = 0.0;
            let mut b = D2_CENTER * y[i];
            for k in 0..4 {
                a += D1[k] * (y[i + k + 1] - y[i - k - 1]);
                b += D2[k] * (y[i + k + 1] + y[i - k - 1]);
            }
            first.push(a / h);
            second.push(b / (h * h));
        }
        Ok((first, second))
    }
}

/// Cylinder samples `u(t)`, `t ≥ 0`, to ball samples
/// `ũ(ρ) = ρ^{(2-n)/2} u(-log ρ)`. The output is ordered by increasing ρ.
pub fn cylinder_to_ball(n: usize, f: &CylinderFunction) -> Result<CylinderFunction> {
    check_dimension(n)?;
    if f.coordinate() != Coordinate::Cylinder {
        return Err(Error::InvalidArgument("expected cylinder samples".into()));
    }
    let e = (2.0 - n as f64) / 2.0;
    let mut points = Vec::with_capacity(f.len());
    let mut values = Vec::with_capacity(f.len());
    for (&t, &u) in f.points().iter().zip(f.values()).rev() {
        if t < 0.0 {
            return Err(Error::NonPositive { what: "1 - ρ (t must be >= 0)", value: -t });
        }
        // ρ^{(2-n)/2} = e^{-t(2-n)/2}
        points.push((-t).exp());
        values.push(u * (-t * e).exp());
    }
    CylinderFunction::new(Coordinate::Ball, points, values, f.mode())
}

/// Inverse of [`cylinder_to_ball`].
pub fn ball_to_cylinder(n: usize, f: &CylinderFunction) -> Result<CylinderFunction> {
    check_dimension(n)?;
    if f.coordinate() != Coordinate::Ball {
        return Err(Error::InvalidArgument("expected ball samples".into()));
    }
    let e = (n as f64 - 2.0) / 2.0;
    let mut points = Vec::with_capacity(f.len());
    let mut values = Vec::with_capacity(f.len());
    for (&rho, &w) in f.points().iter().zip(f.values()).rev() {
        if !(rho > 0.0) {
            return Err(Error::NonPositive { what: "ρ", value: rho });
        }
        let t = -rho.ln();
        points.push(t);
        values.push(w * (-t * e).exp());
    }
    CylinderFunction::new(Coordinate::Cylinder, points, values, f.mode())
}

/// The orbit `u_ε` as a function of the ball radius on the given ρ-grid.
pub fn to_ball(orbit: &PeriodicOrbit, rho: &[f64]) -> Result<CylinderFunction> {
    let e = (2.0 - orbit.n() as f64) / 2.0;
    let mut values = Vec::with_capacity(rho.len());
    for &r in rho {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::NonPositive { what: "ρ in (0, 1]", value: r });
        }
        values.push(r.powf(e) * orbit.u(-r.ln()));
    }
    CylinderFunction::new(Coordinate::Ball, rho.to_vec(), values, Some(0))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::homoclinic_u0;

    #[test]
    fn rejects_unsorted_points() {
        assert!(CylinderFunction::new(Coordinate::Cylinder, vec![0.0, 0.0], vec![1.0, 1.0], None).is_err());
        assert!(CylinderFunction::new(Coordinate::Cylinder, vec![0.0], vec![], None).is_err());
    }

    #[test]
    fn derivatives_of_sine() {
        let f = CylinderFunction::sample(Coordinate::Cylinder, (0.0, 3.0), 301, None, f64::sin).unwrap();
        let (d1, d2) = f.central_derivatives().unwrap();
        for (k, (a, b)) in d1.iter().zip(&d2).enumerate() {
            let t = f.points()[k + 4];
            assert!((a - t.cos()).abs() < 1e-12);
            assert!((b + t.sin()).abs() < 1e-10);
        }
    }

    #[test]
    fn constant_one_in_ball_gauge() {
        let n = 5;
        let f = CylinderFunction::sample(Coordinate::Cylinder, (0.0, 4.0), 41, None, |_| 1.0).unwrap();
        let b = cylinder_to_ball(n, &f).unwrap();
        for (&rho, &w) in b.points().iter().zip(b.values()) {
            assert!((w - rho.powf(-1.5)).abs() < 1e-12 * w);
        }
    }

    #[test]
    fn round_trip() {
        let f = CylinderFunction::sample(Coordinate::Cylinder, (0.0, 6.0), 97, Some(0), |t| 0.3 + 0.1 * t.sin()).unwrap();
        let back = ball_to_cylinder(4, &cylinder_to_ball(4, &f).unwrap()).unwrap();
        for i in 0..f.len() {
            assert!((back.points()[i] - f.points()[i]).abs() < 1e-12);
            assert!((back.values()[i] - f.values()[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn homoclinic_in_ball_gauge() {
        // cosh(log ρ) ρ = (1 + ρ²)/2
        for n in 3..7 {
            let f = CylinderFunction::sample(Coordinate::Cylinder, (0.0, 5.0), 51, None, |t| homoclinic_u0(n, t)).unwrap();
            let b = cylinder_to_ball(n, &f).unwrap();
            for (&rho, &w) in b.points().iter().zip(b.values()) {
                let exact = ((1.0 + rho * rho) / 2.0).powf((2.0 - n as f64) / 2.0);
                assert!((w - exact).abs() < 1e-12 * exact);
            }
        }
    }
}
