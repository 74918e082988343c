//! Central finite-difference stencils on equally spaced samples.
//!
//! Samples are passed as the values at offsets `-2h, -h, 0, +h, +2h`.

use std::ops::{Add, Mul, Sub};

/// Anything that can be combined linearly with real weights.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Linear for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// Fourth-order first derivative.
pub fn d1<T: Linear>(s: [T; 5], h: f64) -> T {
    ((s[3] - s[1]) * 8.0 - (s[4] - s[0])) * (1.0 / (12.0 * h))
}

/// Fourth-order second derivative.
pub fn d2<T: Linear>(s: [T; 5], h: f64) -> T {
    ((s[3] + s[1]) * 16.0 - (s[4] + s[0]) - s[2] * 30.0) * (1.0 / (12.0 * h * h))
}

/// Second-order first derivative from the `-h, +h` samples.
pub fn d1_2<T: Linear>(minus: T, plus: T, h: f64) -> T {
    (plus - minus) * (0.5 / h)
}

/// Fourth-order first derivative of a function of one variable.
pub fn derivative<T: Linear>(f: impl Fn(f64) -> T, x: f64, h: f64) -> T {
    d1([f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h)], h)
}

pub fn second_derivative<T: Linear>(f: impl Fn(f64) -> T, x: f64, h: f64) -> T {
    d2([f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h)], h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn first_derivative_of_sine() {
        let d = derivative(|x: f64| (PI * x / 2.0).sin(), 1.0, 1e-3);
        assert!((d - PI / 2.0 * (PI / 2.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn stencils_exact_on_quartics() {
        let f = |x: f64| 3.0 * x.powi(4) - x.powi(3) + 2.0 * x - 7.0;
        let df = |x: f64| 12.0 * x.powi(3) - 3.0 * x * x + 2.0;
        let ddf = |x: f64| 36.0 * x * x - 6.0 * x;
        let x = 0.7;
        assert!((derivative(f, x, 0.1) - df(x)).abs() < 1e-11);
        assert!((second_derivative(f, x, 0.1) - ddf(x)).abs() < 1e-9);
    }

    #[test]
    fn fourth_order_convergence() {
        let f = |x: f64| x.exp() * x.sin();
        let exact = |x: f64| x.exp() * (x.sin() + x.cos());
        let e1 = (derivative(f, 0.4, 0.1) - exact(0.4)).abs();
        let e2 = (derivative(f, 0.4, 0.05) - exact(0.4)).abs();
        let ratio = e1 / e2;
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }
}
