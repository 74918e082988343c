//! The adapted orthonormal frame `(e1, ..., e5)` along a surface in S^5.
//!
//! `e1` spans the intersection of the tangent plane with the contact
//! distribution, `e2` completes an oriented tangent frame, and the normals
//! are
//!
//! ```text
//! e3 = csc(alpha) i e1 - cot(alpha) v
//! e4 = cot(alpha) e1 + csc(alpha) i v
//! e5 = csc(beta) xi - cot(beta) e2
//! ```
//!
//! where `e2 = sin(beta) v + cos(beta) xi` defines the unit contact vector
//! `v`, `cos(beta) = <xi, e2>` and `cos(alpha) = <i e1, v>`.

use crate::ambient::{j_multiply, real_inner, reeb, ComplexVec3, SpherePoint};
use crate::chart::Jet;
use crate::error::{Angle, GeometryError, Result};

/// Sines below this mark a degenerate angle.
pub const ANGLE_EPS: f64 = 1e-6;
/// Both Reeb components of the partials below this select the Legendrian fallback.
pub const LEGENDRIAN_EPS: f64 = 1e-10;
pub const METRIC_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy)]
pub struct TangentFrame {
    pub x: SpherePoint,
    pub xi: ComplexVec3,
    pub e1: ComplexVec3,
    pub e2: ComplexVec3,
    /// Sign applied to the raw `e1` (or, in the fallback, `e2`) candidate to
    /// make `(e1, e2)` positively oriented relative to `(x_u, x_v)`.
    pub orientation_sign: f64,
    /// `e1 = normalize(x_u)` because the whole tangent plane is contact.
    pub legendrian_fallback: bool,
}

/// Oriented unit tangent frame with `e1` in the contact distribution.
pub fn tangent_frame(jet: &Jet) -> Result<TangentFrame> {
    let metric = jet.check_immersed(METRIC_EPS)?;
    let x = jet.x;
    let xi = reeb(&x);
    let cu = real_inner(&jet.xu, &xi);
    let cv = real_inner(&jet.xv, &xi);
    let legendrian_fallback = cu.abs() < LEGENDRIAN_EPS && cv.abs() < LEGENDRIAN_EPS;
    let candidate = if legendrian_fallback { jet.xu } else { jet.xu * cv - jet.xv * cu };
    let mut e1 = candidate.normalized(1e-12).ok_or(GeometryError::DegenerateTangent)?;

    let mut w = jet.xv - e1 * real_inner(&jet.xv, &e1);
    if w.norm() < 1e-8 * jet.xv.norm().max(f64::MIN_POSITIVE) {
        w = jet.xu - e1 * real_inner(&jet.xu, &e1);
    }
    let mut e2 = w.normalized(1e-300).ok_or(GeometryError::DegenerateTangent)?;
    if !legendrian_fallback && real_inner(&xi, &e2) < 0.0 {
        e2 = -e2;
    }

    let c1 = jet.chart_coords(&e1);
    let c2 = jet.chart_coords(&e2);
    let orientation = c1[0] * c2[1] - c1[1] * c2[0];
    debug_assert!(metric.det() > 0.0);
    let mut orientation_sign = 1.0;
    if orientation < 0.0 {
        orientation_sign = -1.0;
        if legendrian_fallback {
            e2 = -e2;
        } else {
            e1 = -e1;
        }
    }
    Ok(TangentFrame { x, xi, e1, e2, orientation_sign, legendrian_fallback })
}

fn clamped_acos(c: f64) -> f64 {
    c.clamp(-1.0, 1.0).acos()
}

/// `beta = arccos <xi, e2>` in `[0, pi/2]`. A tangent plane containing `xi`
/// (`beta = 0`) is reported as [`GeometryError::DegenerateTangent`].
pub fn contact_angle(tf: &TangentFrame) -> Result<f64> {
    let beta = clamped_acos(real_inner(&tf.xi, &tf.e2));
    if beta.sin() < ANGLE_EPS {
        return Err(GeometryError::DegenerateTangent);
    }
    Ok(beta)
}

/// Unit contact vector with `e2 = sin(beta) v + cos(beta) xi`.
pub fn v_field(tf: &TangentFrame, beta: f64) -> Result<ComplexVec3> {
    let s = beta.sin();
    if s < ANGLE_EPS {
        return Err(GeometryError::DegenerateAngle { which: Angle::Contact, value: beta });
    }
    Ok((tf.e2 - tf.xi * beta.cos()) * (1.0 / s))
}

/// `alpha = arccos <i e1, v>` in `[0, pi]`.
pub fn holomorphic_angle(e1: &ComplexVec3, v: &ComplexVec3) -> f64 {
    clamped_acos(real_inner(&j_multiply(e1), v))
}

/// The normals `(e3, e4, e5)`.
pub fn adapted_frame(tf: &TangentFrame, beta: f64, v: &ComplexVec3, alpha: f64) -> Result<[ComplexVec3; 3]> {
    let (sb, cb) = beta.sin_cos();
    let (sa, ca) = alpha.sin_cos();
    if sb < ANGLE_EPS {
        return Err(GeometryError::DegenerateAngle { which: Angle::Contact, value: beta });
    }
    if sa < ANGLE_EPS {
        return Err(GeometryError::DegenerateAngle { which: Angle::Holomorphic, value: alpha });
    }
    let ie1 = j_multiply(&tf.e1);
    let iv = j_multiply(v);
    let e3 = ie1 * (1.0 / sa) - *v * (ca / sa);
    let e4 = tf.e1 * (ca / sa) + iv * (1.0 / sa);
    let e5 = tf.xi * (1.0 / sb) - tf.e2 * (cb / sb);
    Ok([e3, e4, e5])
}

/// Complete adapted frame at one surface point.
#[derive(Debug, Clone, Copy)]
pub struct FramePoint {
    pub x: SpherePoint,
    pub xi: ComplexVec3,
    pub v: ComplexVec3,
    /// `e[0] ..= e[4]` hold `e1 ..= e5`.
    pub e: [ComplexVec3; 5],
    pub beta: f64,
    pub alpha: f64,
    /// `coords[i]` gives `e_(i+1) = coords[i][0] x_u + coords[i][1] x_v`.
    pub coords: [[f64; 2]; 2],
    pub legendrian_fallback: bool,
}

impl FramePoint {
    pub fn build(jet: &Jet) -> Result<Self> {
        let tf = tangent_frame(jet)?;
        let beta = contact_angle(&tf)?;
        let v = v_field(&tf, beta)?;
        let alpha = holomorphic_angle(&tf.e1, &v);
        let [e3, e4, e5] = adapted_frame(&tf, beta, &v, alpha)?;
        Ok(FramePoint {
            x: tf.x,
            xi: tf.xi,
            v,
            e: [tf.e1, tf.e2, e3, e4, e5],
            beta,
            alpha,
            coords: [jet.chart_coords(&tf.e1), jet.chart_coords(&tf.e2)],
            legendrian_fallback: tf.legendrian_fallback,
        })
    }

    /// Worst residuals of the frame's defining identities.
    pub fn identity_residuals(&self) -> FrameResiduals {
        let z = self.x.z();
        let mut orthonormality: f64 = 0.0;
        for i in 0..5 {
            orthonormality = orthonormality.max(real_inner(&self.e[i], &z).abs());
            for j in i..5 {
                let delta = if i == j { 1.0 } else { 0.0 };
                orthonormality = orthonormality.max((real_inner(&self.e[i], &self.e[j]) - delta).abs());
            }
        }
        let (sb, cb) = self.beta.sin_cos();
        let (sa, ca) = self.alpha.sin_cos();
        let [e1, e2, e3, e4, e5] = self.e;
        let reconstruction = (e2 - (self.v * sb + self.xi * cb)).norm();
        let contact_split = [
            (self.v - (e2 * sb - e5 * cb)).norm(),
            (j_multiply(&self.v) - (e4 * sa - e1 * ca)).norm(),
            (self.xi - (e2 * cb + e5 * sb)).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        let i_action = [
            (j_multiply(&e1) - (e2 * (ca * sb) + e3 * sa - e5 * (ca * cb))).norm(),
            (j_multiply(&e2) - (-(z * cb) - e1 * (ca * sb) + e4 * (sa * sb))).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        FrameResiduals { orthonormality, reconstruction, contact_split, i_action }
    }
}

/// Residual magnitudes of the frame identities at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameResiduals {
    /// `max |<e_i, e_j> - delta_ij|` together with `max |<e_i, x>|`.
    pub orthonormality: f64,
    /// `|e2 - sin(beta) v - cos(beta) xi|`.
    pub reconstruction: f64,
    /// Expansions of `v`, `i v` and `xi` in the adapted frame.
    pub contact_split: f64,
    /// Expansions of `i e1` and `i e2` in the adapted frame.
    pub i_action: f64,
}
