use std::collections::BinaryHeap;

use super::{NumericsError, Tolerance};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

/// One Gauss–Kronrod 7/15 panel on `[a, b]`; returns `(estimate, error)`
/// where the error is the Kronrod/Gauss difference.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss–Kronrod quadrature: the panel with the largest
/// error estimate is bisected until the total error meets `tol`.
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: &Tolerance,
) -> Result<f64, NumericsError> {
    if a == b {
        return Ok(0.0);
    }
    let (value, error) = gauss_kronrod_15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    while heap.len() < MAX_INTERVALS {
        if !total.is_finite() {
            return Err(NumericsError::NonFinite { t: a });
        }
        if total_err <= tol.abs().max(tol.rel() * total.abs()) {
            return Ok(total);
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // Panel can no longer be split; accept what we have.
            heap.push(worst);
            break;
        }
        let (v1, e1) = gauss_kronrod_15(&f, worst.a, mid);
        let (v2, e2) = gauss_kronrod_15(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // Resum to shed accumulated rounding from the running totals.
    let total: f64 = heap.iter().map(|p| p.value).sum();
    let total_err: f64 = heap.iter().map(|p| p.error).sum();
    if total_err <= tol.abs().max(tol.rel() * total.abs()) {
        Ok(total)
    } else {
        Err(NumericsError::QuadratureNotConverged { estimate: total, error: total_err })
    }
}

/// Integrate over `[a, b]` an integrand with (at worst) inverse square-root
/// singularities at both endpoints.
///
/// The substitution `x = a + (b - a)(1 - cos θ)/2` makes such integrands
/// smooth in θ. The closure receives `(x, x - a, b - x)` with the two
/// offsets computed without cancellation, so callers can evaluate
/// differences like `U(b) - U(x)` accurately near the endpoints.
pub fn integrate_endpoint_singular<F>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<f64, NumericsError>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let len = b - a;
    let g = |theta: f64| {
        let (s, c) = (0.5 * theta).sin_cos();
        let da = len * s * s;
        let db = len * c * c;
        let x = if da <= db { a + da } else { b - db };
        let jac = 0.5 * len * theta.sin();
        if jac == 0.0 {
            return 0.0;
        }
        f(x, da, db) * jac
    };
    adaptive_quadrature(g, 0.0, std::f64::consts::PI, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> Tolerance {
        Tolerance::new(1e-14, 1e-14).unwrap()
    }

    #[test]
    fn polynomials_up_to_degree_five() {
        for deg in 0..=5 {
            let got = adaptive_quadrature(|x: f64| x.powi(deg), 0.0, 2.0, &tight()).unwrap();
            let exact = 2f64.powi(deg + 1) / (deg + 1) as f64;
            assert!((got - exact).abs() < 1e-13 * exact.max(1.0), "deg {deg}");
        }
    }

    #[test]
    fn sine_over_half_period() {
        let got = adaptive_quadrature(f64::sin, 0.0, std::f64::consts::PI, &tight()).unwrap();
        assert!((got - 2.0).abs() < 1e-13);
    }

    #[test]
    fn zero_width() {
        assert_eq!(adaptive_quadrature(f64::exp, 1.0, 1.0, &tight()).unwrap(), 0.0);
    }

    #[test]
    fn inverse_sqrt_endpoint() {
        let got = integrate_endpoint_singular(|_, da, _| 1.0 / da.sqrt(), 0.0, 1.0, &tight()).unwrap();
        assert!((got - 2.0).abs() < 1e-12);
    }

    #[test]
    fn arcsine_density() {
        // ∫_{-1}^{1} dx / sqrt(1 - x²) = π with both endpoints singular.
        let got = integrate_endpoint_singular(|_, da, db| 1.0 / (da * db).sqrt(), -1.0, 1.0, &tight()).unwrap();
        assert!((got - std::f64::consts::PI).abs() < 1e-12);
    }
}
