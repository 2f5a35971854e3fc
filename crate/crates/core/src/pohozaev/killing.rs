//! Conformal Killing fields of the round sphere `S^n ⊂ R^{n+1}`, written as
//! pairs `(X₀, w)` with `X₀ ∈ o(n+1)` (rotation part) and `w ∈ R^{n+1}`
//! (centered dilation part): `X_q = X₀ q + w - ⟨q, w⟩ q`.

use nalgebra::{DMatrix, DVector};

use crate::numerics::central_first_derivative;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalKillingField {
    rotation: DMatrix<f64>,
    dilation: DVector<f64>,
}

impl ConformalKillingField {
    pub fn new(rotation: DMatrix<f64>, dilation: DVector<f64>) -> Result<Self> {
        let d = dilation.len();
        if rotation.nrows() != d || rotation.ncols() != d {
            return Err(Error::LengthMismatch { left: rotation.nrows(), right: d });
        }
        let asym = (&rotation + rotation.transpose()).amax();
        if asym > 1e-12 * (1.0 + rotation.amax()) {
            return Err(Error::InvalidArgument("rotation part must be antisymmetric".into()));
        }
        Ok(Self { rotation, dilation })
    }

    /// The centered dilation generated by `v`.
    pub fn centered_dilation(v: &[f64]) -> Self {
        let d = v.len();
        Self { rotation: DMatrix::zeros(d, d), dilation: DVector::from_column_slice(v) }
    }

    /// Infinitesimal rotation in the `(a, b)` plane: `e_a ↦ e_b`.
    pub fn rotation_generator(dim: usize, a: usize, b: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(b, a)] = 1.0;
        m[(a, b)] = -1.0;
        Self { rotation: m, dilation: DVector::zeros(dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dilation.len()
    }

    pub fn rotation(&self) -> &DMatrix<f64> {
        &self.rotation
    }

    pub fn dilation(&self) -> &DVector<f64> {
        &self.dilation
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self { rotation: &self.rotation * a, dilation: &self.dilation * a }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { rotation: &self.rotation + &other.rotation, dilation: &self.dilation + &other.dilation }
    }

    /// `Ad(F)`: conjugation by an orthogonal `F`.
    pub fn rotated(&self, f: &DMatrix<f64>) -> Self {
        Self { rotation: f * &self.rotation * f.transpose(), dilation: f * &self.dilation }
    }

    /// Field value at a point `q` of the unit sphere.
    pub fn at(&self, q: &DVector<f64>) -> DVector<f64> {
        &self.rotation * q + &self.dilation - q * q.dot(&self.dilation)
    }
}

/// `X_q = v - ⟨q, v⟩ q` for `|q| = 1`.
pub fn centered_dilation_field(v: &[f64], q: &[f64]) -> Result<Vec<f64>> {
    if v.len() != q.len() {
        return Err(Error::LengthMismatch { left: v.len(), right: q.len() });
    }
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("q must be a unit vector, |q| = {norm}")));
    }
    let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
    Ok(v.iter().zip(q).map(|(a, b)| a - dot * b).collect())
}

/// The invariant form `B(X, X̂) = ½ Tr(X₀ X̂₀) + w·ŵ` on `o(n+1, 1)`.
pub fn killing_form(x: &ConformalKillingField, y: &ConformalKillingField) -> f64 {
    0.5 * (&x.rotation * &y.rotation).trace() + x.dilation.dot(&y.dilation)
}

/// Rotations `E_ab` (a < b) followed by dilations `e_a`.
pub fn killing_basis(dim: usize) -> Vec<ConformalKillingField> {
    let mut basis = Vec::with_capacity(dim * (dim - 1) / 2 + dim);
    for a in 0..dim {
        for b in a + 1..dim {
            basis.push(ConformalKillingField::rotation_generator(dim, a, b));
        }
    }
    for a in 0..dim {
        let mut e = vec![0.0; dim];
        e[a] = 1.0;
        basis.push(ConformalKillingField::centered_dilation(&e));
    }
    basis
}

/// Orthonormal basis of the complement of the unit vector `p`.
pub fn complement_basis(p: &DVector<f64>) -> Vec<DVector<f64>> {
    let dim = p.len();
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(dim - 1);
    for k in 0..dim {
        let mut e = DVector::zeros(dim);
        e[k] = 1.0;
        let mut v = &e - p * p.dot(&e);
        for b in &out {
            v -= b * b.dot(&v);
        }
        let nv = v.norm();
        if nv > 1e-8 {
            out.push(v / nv);
        }
        if out.len() == dim - 1 {
            break;
        }
    }
    out
}

/// Sphere point for the flat chart `x ∈ p^⊥ ≅ R^n`, the inverse of the
/// stereographic projection from `-p`: `x = q_⊥ / (1 + ⟨q, p⟩)`.
pub fn chart_to_sphere(p: &DVector<f64>, frame: &[DVector<f64>], x: &[f64]) -> DVector<f64> {
    let r2: f64 = x.iter().map(|c| c * c).sum();
    let mut q = p * ((1.0 - r2) / (1.0 + r2));
    for (b, c) in frame.iter().zip(x) {
        q += b * (2.0 * c / (1.0 + r2));
    }
    q
}

/// Push-forward of the field to the flat chart at `x`.
pub fn field_in_chart(field: &ConformalKillingField, p: &DVector<f64>, frame: &[DVector<f64>], x: &[f64]) -> Vec<f64> {
    let q = chart_to_sphere(p, frame, x);
    let xq = field.at(&q);
    let qp = q.dot(p);
    let xp = xq.dot(p);
    frame
        .iter()
        .map(|b| xq.dot(b) / (1.0 + qp) - q.dot(b) * xp / ((1.0 + qp) * (1.0 + qp)))
        .collect()
}

/// Sup over the grid of the trace-free part of the symmetrized flat
/// derivative `∂_i X_j + ∂_j X_i - (2/n) div X δ_ij` of a chart vector field.
///
/// The flat metric and the round metric are conformal, so this vanishes
/// exactly for conformal Killing fields of the sphere.
pub fn conformal_killing_residual<F>(field: F, dim: usize, grid: &[Vec<f64>], h: f64) -> f64
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let mut worst: f64 = 0.0;
    for x in grid {
        // jac[i][j] = ∂_i X_j
        let mut jac = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            for (j, entry) in jac[i].iter_mut().enumerate() {
                *entry = central_first_derivative(
                    |s| {
                        let mut y = x.clone();
                        y[i] += s;
                        field(&y)[j]
                    },
                    0.0,
                    h,
                );
            }
        }
        let div: f64 = (0..dim).map(|i| jac[i][i]).sum();
        for i in 0..dim {
            for j in 0..dim {
                let delta = if i == j { 1.0 } else { 0.0 };
                let s = jac[i][j] + jac[j][i] - 2.0 / dim as f64 * div * delta;
                worst = worst.max(s.abs());
            }
        }
    }
    worst
}

/// Sup residual of the conformal Killing equation for `field`, read in the
/// flat chart around the axis `p`.
pub fn verify_conformal_killing(field: &ConformalKillingField, p: &[f64], grid: &[Vec<f64>]) -> Result<f64> {
    let p = DVector::from_column_slice(p);
    if p.len() != field.ambient_dim() {
        return Err(Error::LengthMismatch { left: p.len(), right: field.ambient_dim() });
    }
    let frame = complement_basis(&p);
    Ok(conformal_killing_residual(|x| field_in_chart(field, &p, &frame, x), p.len() - 1, grid, 1e-3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(dim: usize) -> Vec<Vec<f64>> {
        // deterministic spread of points in the ball of radius ~1.5
        (0..12)
            .map(|k| (0..dim).map(|i| (0.37 * (k * dim + i) as f64 + 0.11).sin() * 1.2).collect())
            .collect()
    }

    #[test]
    fn dilation_field_values() {
        let q = [0.0, 0.6, 0.8];
        assert_eq!(centered_dilation_field(&q, &q).unwrap().iter().map(|x| x.abs()).sum::<f64>(), 0.0);
        assert_eq!(centered_dilation_field(&[1.0, 0.0, 0.0], &q).unwrap(), vec![1.0, 0.0, 0.0]);
        let x = centered_dilation_field(&[0.3, -1.0, 2.0], &q).unwrap();
        assert!((x[1] * 0.6 + x[2] * 0.8).abs() < 1e-15);
        assert!(centered_dilation_field(&[1.0, 0.0, 0.0], &[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn killing_form_signature() {
        let b = killing_basis(5);
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let v = killing_form(x, y);
                let expected = if i != j { 0.0 } else if i < 10 { -1.0 } else { 1.0 };
                assert!((v - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn chart_fields_are_conformal() {
        let dim = 4;
        let mut p = vec![0.0; dim + 1];
        p[0] = 1.0;
        let axis = ConformalKillingField::centered_dilation(&p);
        let g = grid(dim);
        assert!(verify_conformal_killing(&axis, &p, &g).unwrap() < 1e-9);
        let v = [0.3, -0.2, 0.5, 0.1, -0.4];
        let dil = ConformalKillingField::centered_dilation(&v);
        assert!(verify_conformal_killing(&dil, &p, &g).unwrap() < 1e-8);
        let rot = ConformalKillingField::rotation_generator(dim + 1, 0, 2).add(&ConformalKillingField::rotation_generator(dim + 1, 1, 3));
        assert!(verify_conformal_killing(&rot, &p, &g).unwrap() < 1e-8);
    }

    #[test]
    fn bump_breaks_conformality() {
        let dim = 3;
        let p = DVector::from_column_slice(&[1.0, 0.0, 0.0, 0.0]);
        let frame = complement_basis(&p);
        let field = ConformalKillingField::centered_dilation(&[1.0, 0.0, 0.0, 0.0]);
        let bumped = |x: &[f64]| {
            let mut v = field_in_chart(&field, &p, &frame, x);
            let r2: f64 = x.iter().map(|c| c * c).sum();
            v[0] += (-r2).exp();
            v
        };
        assert!(conformal_killing_residual(bumped, dim, &grid(dim), 1e-3) > 1e-2);
    }
}
