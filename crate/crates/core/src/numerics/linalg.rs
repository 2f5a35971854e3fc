use num_complex::Complex64;

/// Off-diagonal magnitude above which a matrix with a repeated eigenvalue
/// is reported as a nontrivial Jordan block.
pub const DEFECTIVE_THRESHOLD: f64 = 1e-7;

/// Eigen-data of a real 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen2 {
    pub values: [Complex64; 2],
    /// Unit eigenvectors matching `values` (equal when defective).
    pub vectors: [[Complex64; 2]; 2],
    /// Eigenvalues coincide (scalar or Jordan case).
    pub repeated: bool,
    /// Set when the eigenvalues coincide (to within `repeat_tol`) and the
    /// matrix is not a multiple of the identity.
    pub defective: bool,
}

/// Eigenvalues of `[[a, b], [c, d]]` by the cancellation-free quadratic
/// formula. `repeat_tol` is the discriminant scale below which the two
/// eigenvalues are treated as equal.
pub fn eigen_2x2(m: [[f64; 2]; 2], repeat_tol: f64) -> Eigen2 {
    let [[a, b], [c, d]] = m;
    let half_tr = 0.5 * (a + d);
    let det = a * d - b * c;
    // (λ - half_tr)² = half_tr² - det, computed as ((a-d)/2)² + bc.
    let disc = 0.25 * (a - d) * (a - d) + b * c;
    let scale = half_tr.abs().max(1.0);
    if disc.abs() <= repeat_tol * scale * scale {
        let off = b.abs().max(c.abs()).max((a - d).abs());
        let lam = Complex64::new(half_tr, 0.0);
        let defective = off > DEFECTIVE_THRESHOLD;
        let vectors = if defective {
            let v = eigenvector(m, lam);
            [v, v]
        } else {
            let one = Complex64::new(1.0, 0.0);
            let zero = Complex64::new(0.0, 0.0);
            [[one, zero], [zero, one]]
        };
        return Eigen2 { values: [lam, lam], vectors, repeated: true, defective };
    }
    if disc > 0.0 {
        let r = disc.sqrt();
        let big = half_tr + r.copysign(half_tr);
        let small = if big != 0.0 { det / big } else { half_tr - r.copysign(half_tr) };
        let values = [Complex64::new(big, 0.0), Complex64::new(small, 0.0)];
        Eigen2 { values, vectors: values.map(|l| eigenvector(m, l)), repeated: false, defective: false }
    } else {
        let im = (-disc).sqrt();
        let values = [Complex64::new(half_tr, im), Complex64::new(half_tr, -im)];
        Eigen2 { values, vectors: values.map(|l| eigenvector(m, l)), repeated: false, defective: false }
    }
}

/// Null vector of `M - λ`, taken from whichever row is better scaled.
fn eigenvector(m: [[f64; 2]; 2], lambda: Complex64) -> [Complex64; 2] {
    let [[a, b], [c, d]] = m;
    let r0 = [lambda - d, Complex64::new(c, 0.0)];
    let r1 = [Complex64::new(b, 0.0), lambda - a];
    let n0 = r0[0].norm_sqr() + r0[1].norm_sqr();
    let n1 = r1[0].norm_sqr() + r1[1].norm_sqr();
    let (v, norm) = if n0 >= n1 { (r0, n0) } else { (r1, n1) };
    if norm == 0.0 {
        // λ I: any vector works
        return [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    }
    let s = norm.sqrt();
    [v[0] / s, v[1] / s]
}
