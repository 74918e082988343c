//! The reduced system for constant contact angle and vanishing `a`, `b`,
//! and the Laplacian equation for `alpha` it implies:
//!
//! ```text
//! cos(alpha)(2(cot(beta) - tan(beta)) alpha_1 - sin(alpha)(cot^2 beta - 3)) - cot(alpha)|grad alpha|^2 = 0
//! 2cos(alpha)(cot(beta) - tan(beta)) alpha_1 + sin(alpha)cos(alpha)(5 - cot^2 beta) + Delta alpha = 0
//! Delta alpha = -sin(2 alpha) - cot(alpha)|grad alpha|^2
//! ```

use crate::error::{GeometryError, Result};
use crate::structure::sample::PointValues;
use crate::structure::trig::Trig;

pub const EQUATIONS: [&str; 3] = ["gradient", "laplace", "alpha_laplacian"];

pub fn gradient_constraint(p: &PointValues) -> Result<f64> {
    let t = Trig::new(p.alpha, p.beta);
    let (cot_a, cot_b, tan_b) = (t.cot_a()?, t.cot_b()?, t.tan_b()?);
    Ok(t.ca * (2.0 * (cot_b - tan_b) * p.grad_alpha.f1 - t.sa * (cot_b * cot_b - 3.0)) - cot_a * p.grad_alpha.norm_sq())
}

pub fn laplace(p: &PointValues) -> Result<f64> {
    let t = Trig::new(p.alpha, p.beta);
    let (cot_b, tan_b) = (t.cot_b()?, t.tan_b()?);
    Ok(2.0 * t.ca * (cot_b - tan_b) * p.grad_alpha.f1 + t.sa * t.ca * (5.0 - cot_b * cot_b) + p.lap_alpha)
}

/// `Delta alpha + sin(2 alpha) + cot(alpha)|grad alpha|^2`.
pub fn alpha_laplacian(p: &PointValues) -> Result<f64> {
    let cot_a = Trig::new(p.alpha, p.beta).cot_a()?;
    Ok(p.lap_alpha + (2.0 * p.alpha).sin() + cot_a * p.grad_alpha.norm_sq())
}

/// Pointwise hypothesis of the reduced system: `|a|, |b| <= tol` and
/// `|grad beta| <= tol`.
pub fn check_hypothesis(p: &PointValues, tol: f64) -> Result<()> {
    if p.a.abs() > tol || p.b.abs() > tol {
        return Err(GeometryError::HypothesisViolated(format!(
            "second fundamental form coefficients a = {:e}, b = {:e} exceed {tol:e}",
            p.a, p.b
        )));
    }
    let gb = p.grad_beta.norm_sq().sqrt();
    if gb > tol {
        return Err(GeometryError::HypothesisViolated(format!("contact angle is not constant: |grad beta| = {gb:e}")));
    }
    Ok(())
}

/// Residuals of the three reduced equations, after checking the hypothesis.
pub fn reduced_residuals(p: &PointValues, hypothesis_tol: f64) -> Result<[Result<f64>; 3]> {
    check_hypothesis(p, hypothesis_tol)?;
    Ok([gradient_constraint(p), laplace(p), alpha_laplacian(p)])
}

/// Solves the first two reduced equations for `|grad alpha|^2` and
/// `Delta alpha` given `alpha`, `beta` and `alpha_1`. Returns
/// `(grad_sq, lap_alpha)`.
pub fn solve_reduced_pair(alpha: f64, beta: f64, alpha1: f64) -> Result<(f64, f64)> {
    let t = Trig::new(alpha, beta);
    let (cot_a, cot_b, tan_b) = (t.cot_a()?, t.cot_b()?, t.tan_b()?);
    if cot_a == 0.0 {
        return Err(GeometryError::SingularTrig { factor: "1/cot alpha", value: f64::INFINITY });
    }
    let grad_sq = t.ca * (2.0 * (cot_b - tan_b) * alpha1 - t.sa * (cot_b * cot_b - 3.0)) / cot_a;
    let lap = -2.0 * t.ca * (cot_b - tan_b) * alpha1 - t.sa * t.ca * (5.0 - cot_b * cot_b);
    Ok((grad_sq, lap))
}
