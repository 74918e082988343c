//! Gaussian curvature of a minimal surface written through the contact and
//! holomorphic angles, and the Laplacian identity obtained by equating the
//! two expressions.

use crate::error::Result;
use crate::structure::sample::PointValues;
use crate::structure::trig::Trig;

fn shifted_sq(f1: f64, f2: f64, shift: f64) -> f64 {
    (f1 + shift) * (f1 + shift) + f2 * f2
}

/// `K = 1 - (1 + csc^2 b)(a^2 + b^2) - 2b csc(beta)(alpha_1 - sin(alpha) cot(beta))
///      + 2a csc(beta) alpha_2 - |grad beta + cos(alpha) e1|^2
///      - |grad alpha - sin(alpha) cot(beta) e1|^2`
pub fn gauss_curvature_frame(p: &PointValues) -> Result<f64> {
    let t = Trig::new(p.alpha, p.beta);
    let csc_b = t.csc_b()?;
    let cot_b = t.cot_b()?;
    let (ga, gb) = (p.grad_alpha, p.grad_beta);
    Ok(1.0 - (1.0 + csc_b * csc_b) * (p.a * p.a + p.b * p.b) - 2.0 * p.b * csc_b * (ga.f1 - t.sa * cot_b)
        + 2.0 * p.a * csc_b * ga.f2
        - shifted_sq(gb.f1, gb.f2, t.ca)
        - shifted_sq(ga.f1, ga.f2, -t.sa * cot_b))
}

/// `K = -(1 + tan^2 beta)|grad beta|^2 - tan(beta) Delta beta
///      - 2 cos(alpha)(1 + 2 tan^2 beta) beta_1 + 2 tan(beta) sin(alpha) alpha_1
///      - 4 tan^2(beta) cos^2(alpha)`
pub fn gauss_curvature_contact(p: &PointValues) -> Result<f64> {
    let t = Trig::new(p.alpha, p.beta);
    let tan_b = t.tan_b()?;
    let t2 = tan_b * tan_b;
    Ok(-(1.0 + t2) * p.grad_beta.norm_sq() - tan_b * p.lap_beta - 2.0 * t.ca * (1.0 + 2.0 * t2) * p.grad_beta.f1
        + 2.0 * tan_b * t.sa * p.grad_alpha.f1
        - 4.0 * t2 * t.ca * t.ca)
}

/// Left minus right side of the Laplacian identity for `beta`:
/// `tan(beta) Delta beta = (1 + csc^2 beta)(a^2 + b^2) + 2b csc(beta)(alpha_1 - sin(alpha) cot(beta))
///   - 2a csc(beta) alpha_2 - tan^2(beta)(|grad beta + 2cos(alpha) e1|^2
///   - |cot(beta) grad alpha + sin(alpha)(1 - cot^2 beta) e1|^2) + sin^2(alpha)(1 - tan^2 beta)`.
pub fn laplacian_identity_residual(p: &PointValues) -> Result<f64> {
    let t = Trig::new(p.alpha, p.beta);
    let tan_b = t.tan_b()?;
    let csc_b = t.csc_b()?;
    let cot_b = t.cot_b()?;
    let (ga, gb) = (p.grad_alpha, p.grad_beta);
    let t2 = tan_b * tan_b;
    let rhs = (1.0 + csc_b * csc_b) * (p.a * p.a + p.b * p.b) + 2.0 * p.b * csc_b * (ga.f1 - t.sa * cot_b)
        - 2.0 * p.a * csc_b * ga.f2
        - t2 * (shifted_sq(gb.f1, gb.f2, 2.0 * t.ca)
            - shifted_sq(cot_b * ga.f1, cot_b * ga.f2, t.sa * (1.0 - cot_b * cot_b)))
        + t.sa * t.sa * (1.0 - t2);
    Ok(tan_b * p.lap_beta - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::GeometryError;
    use crate::field::Gradient;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn g(f1: f64, f2: f64) -> Gradient {
        Gradient { f1, f2 }
    }

    #[test]
    fn k_frame_on_great_sphere_values() {
        let p = PointValues { alpha: FRAC_PI_2, beta: FRAC_PI_2, ..Default::default() };
        assert!((gauss_curvature_frame(&p).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn k_frame_constant_angles() {
        let (alpha, beta) = (0.7, 1.1);
        let p = PointValues { alpha, beta, ..Default::default() };
        let expected = 1.0 - alpha.cos().powi(2) - (alpha.sin() / beta.tan()).powi(2);
        assert!((gauss_curvature_frame(&p).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn k_contact_constant_beta_right_holomorphic_angle() {
        let p = PointValues { alpha: FRAC_PI_2, beta: 0.8, ..Default::default() };
        assert!(gauss_curvature_contact(&p).unwrap().abs() < 1e-15);
    }

    #[test]
    fn contact_routes_skip_legendrian() {
        let p = PointValues { alpha: FRAC_PI_2, beta: FRAC_PI_2, ..Default::default() };
        assert!(matches!(gauss_curvature_contact(&p), Err(GeometryError::SingularTrig { .. })));
        assert!(matches!(laplacian_identity_residual(&p), Err(GeometryError::SingularTrig { .. })));
    }

    #[test]
    fn beta_laplacian_constant_beta_reduces_to_rhs() {
        // Flat torus values: alpha = pi/2, sin(beta) = 1/3, a = 0, b = 1/sqrt2.
        // RHS = 10 * 1/2 - 12 + 49/8 + 1 - 1/8 = 0.
        let beta = (1.0f64 / 3.0).asin();
        let p = PointValues { alpha: FRAC_PI_2, beta, b: std::f64::consts::FRAC_1_SQRT_2, ..Default::default() };
        assert!(laplacian_identity_residual(&p).unwrap().abs() < 1e-12);
    }

    proptest! {
        // The Laplacian identity is the difference of the two curvature
        // expressions, so its residual is bounded by theirs.
        #[test]
        fn beta_laplacian_is_difference_of_routes(
            alpha in 0.2f64..2.9, beta in 0.1f64..1.45,
            a in -2.0f64..2.0, b in -2.0f64..2.0,
            ga in prop::array::uniform2(-2.0f64..2.0), gb in prop::array::uniform2(-2.0f64..2.0),
            lap in -3.0f64..3.0, k in -2.0f64..2.0,
        ) {
            let p = PointValues {
                alpha, beta, a, b,
                grad_alpha: g(ga[0], ga[1]), grad_beta: g(gb[0], gb[1]),
                lap_beta: lap, ..Default::default()
            };
            let k11 = gauss_curvature_frame(&p).unwrap();
            let k13 = gauss_curvature_contact(&p).unwrap();
            let r14 = laplacian_identity_residual(&p).unwrap();
            let scale = 1.0 + k11.abs() + k13.abs();
            prop_assert!((r14 - (k11 - k13)).abs() <= 1e-10 * scale);
            prop_assert!(r14.abs() <= (k11 - k).abs() + (k13 - k).abs() + 1e-10 * scale);
        }
    }
}
