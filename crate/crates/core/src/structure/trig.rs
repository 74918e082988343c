use crate::error::{GeometryError, Result};

/// Trig factors larger than this skip the identity that uses them.
pub const TRIG_GUARD: f64 = 1e8;

/// Sines and cosines of the two frame angles, with guarded reciprocal
/// factors.
#[derive(Debug, Clone, Copy)]
pub struct Trig {
    pub sa: f64,
    pub ca: f64,
    pub sb: f64,
    pub cb: f64,
}

fn guard(factor: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value.abs() <= TRIG_GUARD {
        Ok(value)
    } else {
        Err(GeometryError::SingularTrig { factor, value: value.abs() })
    }
}

impl Trig {
    pub fn new(alpha: f64, beta: f64) -> Self {
        let (sa, ca) = alpha.sin_cos();
        let (sb, cb) = beta.sin_cos();
        Trig { sa, ca, sb, cb }
    }

    pub fn cot_a(&self) -> Result<f64> {
        guard("cot alpha", self.ca / self.sa)
    }

    pub fn csc_a(&self) -> Result<f64> {
        guard("csc alpha", 1.0 / self.sa)
    }

    pub fn tan_b(&self) -> Result<f64> {
        guard("tan beta", self.sb / self.cb)
    }

    pub fn sec_b(&self) -> Result<f64> {
        guard("sec beta", 1.0 / self.cb)
    }

    pub fn cot_b(&self) -> Result<f64> {
        guard("cot beta", self.cb / self.sb)
    }

    pub fn csc_b(&self) -> Result<f64> {
        guard("csc beta", 1.0 / self.sb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn legendrian_tan_is_guarded() {
        let t = Trig::new(FRAC_PI_2, FRAC_PI_2);
        assert!(matches!(t.tan_b(), Err(GeometryError::SingularTrig { factor: "tan beta", .. })));
        assert!(t.sec_b().is_err());
        assert!(t.cot_b().unwrap().abs() < 1e-15);
        assert!((t.csc_b().unwrap() - 1.0).abs() < 1e-15);
        assert!(t.cot_a().unwrap().abs() < 1e-15);
    }

    #[test]
    fn near_zero_beta_is_guarded() {
        let t = Trig::new(1.0, 1e-9);
        assert!(t.cot_b().is_err());
        assert!(t.csc_b().is_err());
        assert!(t.tan_b().is_ok());
    }
}
