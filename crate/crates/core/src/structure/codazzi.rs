//! Scalar Codazzi-Ricci equations for a minimal surface with constant
//! contact angle. Each function returns the left-hand side, which
//! vanishes on such a surface.

use crate::error::Result;
use crate::structure::sample::PointValues;
use crate::structure::trig::Trig;

pub const EQUATIONS: [&str; 4] = ["skew", "trace", "skew_laplace", "scalar"];

pub fn skew(p: &PointValues) -> Result<f64> {
    let t = Trig::new(p.alpha, p.beta);
    let (cot_a, csc_b, cot_b, tan_b, sec_b) = (t.cot_a()?, t.csc_b()?, t.cot_b()?, t.tan_b()?, t.sec_b()?);
    let (a, b) = (p.a, p.b);
    let ga = p.grad_alpha;
    let c2 = csc_b * csc_b + cot_b * cot_b;
    Ok((p.grad_b.f1 - p.grad_a.f2) + (a * a + b * b) * cot_a * csc_b * cot_b * cot_b - a * cot_a * c2 * ga.f2
        + b * (cot_a * c2 * ga.f1 - t.ca * cot_b * (c2 - 3.0 * sec_b * sec_b * (1.0 + t.sb * t.sb)))
        - t.ca * csc_b * (2.0 * (cot_b - tan_b) * ga.f1 - t.sa * (cot_b * cot_b - 3.0))
        + cot_a * csc_b * ga.norm_sq())
}

pub fn trace(p: &PointValues) -> Result<f64> {
    let t = Trig::new(p.alpha, p.beta);
    let (cot_a, tan_b, sec_b) = (t.cot_a()?, t.tan_b()?, t.sec_b()?);
    let ga = p.grad_alpha;
    Ok((p.grad_a.f1 + p.grad_b.f2) + p.b * cot_a * ga.f2 + p.a * (cot_a * ga.f1 + 6.0 * tan_b * t.ca)
        - 2.0 * sec_b * t.ca * ga.f2)
}

pub fn skew_laplace(p: &PointValues) -> Result<f64> {
    let t = Trig::new(p.alpha, p.beta);
    let (cot_a, cot_b, tan_b) = (t.cot_a()?, t.cot_b()?, t.tan_b()?);
    let (a, b) = (p.a, p.b);
    let ga = p.grad_alpha;
    Ok((p.grad_a.f2 - p.grad_b.f1) - (a * a + b * b) * cot_a * t.sb * cot_b * cot_b
        + a * cot_a * ga.f2
        + b * (-cot_a * ga.f1 + 2.0 * t.ca * (cot_b - 3.0 * tan_b))
        + 2.0 * t.ca * t.sb * (cot_b - tan_b) * ga.f1
        + t.sa * t.ca * t.sb * (5.0 - cot_b * cot_b)
        + t.sb * p.lap_alpha)
}

pub fn scalar(p: &PointValues) -> Result<f64> {
    let t = Trig::new(p.alpha, p.beta);
    let (csc_b, cot_b, tan_b) = (t.csc_b()?, t.cot_b()?, t.tan_b()?);
    let (a, b) = (p.a, p.b);
    let ga = p.grad_alpha;
    Ok((a * a + b * b) * (1.0 + csc_b * csc_b) + 2.0 * b * csc_b * (ga.f1 - cot_b * t.sa) - 2.0 * a * csc_b * ga.f2
        + ga.norm_sq()
        + 2.0 * t.sa * (tan_b - cot_b) * ga.f1
        - 4.0 * tan_b * tan_b * t.ca * t.ca
        - t.sa * t.sa * (1.0 - cot_b * cot_b))
}

/// All four residuals; each is skipped independently on singular factors.
pub fn codazzi_residuals(p: &PointValues) -> [Result<f64>; 4] {
    [skew(p), trace(p), skew_laplace(p), scalar(p)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::circle_locus;
    use crate::field::Gradient;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn trace_with_vanishing_second_fundamental_form() {
        let (alpha, beta) = (0.9, 0.6);
        let p = PointValues { alpha, beta, grad_alpha: Gradient { f1: 0.4, f2: -0.3 }, ..Default::default() };
        let expected = -2.0 / beta.cos() * alpha.cos() * -0.3;
        assert!((trace(&p).unwrap() - expected).abs() < 1e-14);
        let p0 = PointValues { grad_alpha: Gradient { f1: 0.4, f2: 0.0 }, ..p };
        assert!(trace(&p0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn scalar_skips_legendrian() {
        let p = PointValues { alpha: FRAC_PI_2, beta: FRAC_PI_2, ..Default::default() };
        assert!(scalar(&p).is_err());
        assert!(codazzi_residuals(&p).iter().all(|r| r.is_err()));
    }

    #[test]
    fn scalar_at_right_holomorphic_angle_is_the_circle() {
        // With alpha = pi/2 and constant angles, sin^2(beta) * scalar equals
        // (1 + sin^2 beta) times the circle-locus residual.
        for (beta, a, b) in [(0.4, 0.3, -0.2), (1.2, -0.7, 0.5), (0.9, 0.0, 0.1)] {
            let p = PointValues { alpha: FRAC_PI_2, beta, a, b, ..Default::default() };
            let s2 = beta.sin().powi(2);
            let lhs = s2 * scalar(&p).unwrap();
            let rhs = (1.0 + s2) * circle_locus(beta, a, b);
            assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn right_angle_constant_data_kills_first_three() {
        let p = PointValues { alpha: FRAC_PI_2, beta: 0.7, a: 0.3, b: -0.4, ..Default::default() };
        for r in [skew(&p), trace(&p), skew_laplace(&p)] {
            assert!(r.unwrap().abs() < 1e-14);
        }
    }
}
