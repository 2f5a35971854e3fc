//! Eighth-order central finite differences, used for operator residuals
//! that must not reuse the derivative information of the solver.

const FIRST: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
const SECOND_CENTER: f64 = -205.0 / 72.0;
const SECOND: [f64; 4] = [8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];

pub fn central_first_derivative<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> f64 {
    let mut acc = 0.0;
    for (k, c) in FIRST.iter().enumerate() {
        let s = (k + 1) as f64 * h;
        acc += c * (f(t + s) - f(t - s));
    }
    acc / h
}

pub fn central_second_derivative<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> f64 {
    let mut acc = SECOND_CENTER * f(t);
    for (k, c) in SECOND.iter().enumerate() {
        let s = (k + 1) as f64 * h;
        acc += c * (f(t + s) + f(t - s));
    }
    acc / (h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_octics() {
        let p = |x: f64| 1.0 + x - 2.0 * x.powi(3) + 0.5 * x.powi(8);
        let dp = |x: f64| 1.0 - 6.0 * x * x + 4.0 * x.powi(7);
        let ddp = |x: f64| -12.0 * x + 28.0 * x.powi(6);
        for &x in &[-0.7, 0.0, 0.4] {
            assert!((central_first_derivative(p, x, 0.05) - dp(x)).abs() < 1e-11);
            assert!((central_second_derivative(p, x, 0.05) - ddp(x)).abs() < 1e-9);
        }
    }

    #[test]
    fn sine_derivatives() {
        let x = 0.9;
        assert!((central_first_derivative(f64::sin, x, 1e-2) - x.cos()).abs() < 1e-13);
        assert!((central_second_derivative(f64::sin, x, 1e-2) + x.sin()).abs() < 1e-10);
    }
}
