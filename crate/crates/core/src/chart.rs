//! Parametrized surface patches and their jets.

use std::fmt;
use std::sync::Arc;

use crate::ambient::{real_inner, ComplexVec3, SpherePoint};
use crate::error::{GeometryError, Result};
use crate::fd;

/// Exact position and partials supplied by a chart that knows them.
#[derive(Debug, Clone, Copy)]
pub struct RawJet {
    pub x: ComplexVec3,
    pub xu: ComplexVec3,
    pub xv: ComplexVec3,
    pub xuu: ComplexVec3,
    pub xuv: ComplexVec3,
    pub xvv: ComplexVec3,
}

/// A map from parameter space into S^5.
pub trait Immersion: Send + Sync {
    fn position(&self, u: f64, v: f64) -> ComplexVec3;

    fn analytic_jet(&self, _u: f64, _v: f64) -> Option<RawJet> {
        None
    }
}

/// Parameter rectangle with per-direction periodicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub u: (f64, f64),
    pub v: (f64, f64),
    pub periodic_u: bool,
    pub periodic_v: bool,
}

impl Domain {
    pub fn doubly_periodic(u: (f64, f64), v: (f64, f64)) -> Self {
        Domain { u, v, periodic_u: true, periodic_v: true }
    }

    /// Checks that every point within `reach` of `(u, v)` along a
    /// non-periodic direction stays inside the rectangle.
    pub fn check_reach(&self, u: f64, v: f64, reach: f64) -> Result<()> {
        let inside = |x: f64, (lo, hi): (f64, f64), periodic: bool| periodic || (x - reach >= lo && x + reach <= hi);
        if inside(u, self.u, self.periodic_u) && inside(v, self.v, self.periodic_v) {
            Ok(())
        } else {
            Err(GeometryError::BoundaryTooClose { u, v, h: reach })
        }
    }
}

/// Position plus first and second partials at a parameter point.
#[derive(Debug, Clone, Copy)]
pub struct Jet {
    pub x: SpherePoint,
    pub xu: ComplexVec3,
    pub xv: ComplexVec3,
    pub xuu: ComplexVec3,
    pub xuv: ComplexVec3,
    pub xvv: ComplexVec3,
}

/// First fundamental form `[g11, g12, g22]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
}

impl Metric {
    pub fn det(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    /// Inverse metric `[g^11, g^12, g^22]`.
    pub fn inverse(&self) -> Metric {
        let d = self.det();
        Metric { g11: self.g22 / d, g12: -self.g12 / d, g22: self.g11 / d }
    }

    /// Chart coordinates of the tangent vector whose inner products with
    /// `(x_u, x_v)` are `(pu, pv)`.
    pub fn raise(&self, pu: f64, pv: f64) -> [f64; 2] {
        let inv = self.inverse();
        [inv.g11 * pu + inv.g12 * pv, inv.g12 * pu + inv.g22 * pv]
    }
}

impl Jet {
    pub fn metric(&self) -> Metric {
        Metric {
            g11: real_inner(&self.xu, &self.xu),
            g12: real_inner(&self.xu, &self.xv),
            g22: real_inner(&self.xv, &self.xv),
        }
    }

    /// Immersion check: metric determinant must exceed `threshold`.
    pub fn check_immersed(&self, threshold: f64) -> Result<Metric> {
        let m = self.metric();
        let det = m.det();
        if det > threshold && det.is_finite() {
            Ok(m)
        } else {
            Err(GeometryError::DegenerateMetric { det })
        }
    }

    /// Chart coordinates `(c_u, c_v)` of a tangent vector `w`, so that
    /// `w = c_u x_u + c_v x_v` when `w` is tangent.
    pub fn chart_coords(&self, w: &ComplexVec3) -> [f64; 2] {
        self.metric().raise(real_inner(w, &self.xu), real_inner(w, &self.xv))
    }
}

/// A named surface patch in S^5.
#[derive(Clone)]
pub struct ChartSpec {
    pub name: String,
    pub domain: Domain,
    immersion: Arc<dyn Immersion>,
    has_analytic_jet: bool,
    /// Gaussian curvature when it is constant and known in closed form.
    pub known_curvature: Option<f64>,
}

impl fmt::Debug for ChartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChartSpec")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("analytic_jet", &self.has_analytic_jet)
            .field("known_curvature", &self.known_curvature)
            .finish()
    }
}

const PROBE_N: usize = 8;
const PROBE_H: f64 = 1e-3;

impl ChartSpec {
    /// Builds a chart and validates it on a coarse probe grid: the image must
    /// lie on the unit sphere and analytic first partials must agree with
    /// fourth-order differences.
    pub fn new(
        name: impl Into<String>,
        immersion: Arc<dyn Immersion>,
        domain: Domain,
        known_curvature: Option<f64>,
    ) -> Result<Self> {
        let name = name.into();
        let has_analytic_jet = immersion.analytic_jet(domain.u.0, domain.v.0).is_some();
        let chart = ChartSpec { name, domain, immersion, has_analytic_jet, known_curvature };
        let grid = crate::field::Grid::new(domain, PROBE_N, PROBE_N);
        for (u, v) in grid.points() {
            let x = chart.immersion.position(u, v);
            if (x.norm() - 1.0).abs() > 1e-10 {
                return Err(GeometryError::InvalidChart(format!(
                    "{}: |x({u}, {v})| = {} is off the unit sphere",
                    chart.name,
                    x.norm()
                )));
            }
            if chart.has_analytic_jet && domain.check_reach(u, v, 2.0 * PROBE_H).is_ok() {
                let exact = chart.immersion.analytic_jet(u, v).expect("analytic jet");
                let fd = chart.fd_jet(u, v, PROBE_H);
                let err = (exact.xu - fd.xu).max_abs().max((exact.xv - fd.xv).max_abs());
                if err > 1e-8 {
                    return Err(GeometryError::InvalidChart(format!(
                        "{}: analytic partials disagree with differences by {err:e} at ({u}, {v})",
                        chart.name
                    )));
                }
            }
        }
        Ok(chart)
    }

    pub fn position(&self, u: f64, v: f64) -> ComplexVec3 {
        self.immersion.position(u, v)
    }

    pub fn has_analytic_jet(&self) -> bool {
        self.has_analytic_jet
    }

    fn fd_jet(&self, u: f64, v: f64, h: f64) -> RawJet {
        let f = |u: f64, v: f64| self.immersion.position(u, v);
        let su = [-2.0, -1.0, 0.0, 1.0, 2.0].map(|k| f(u + k * h, v));
        let sv = [-2.0, -1.0, 0.0, 1.0, 2.0].map(|k| f(u, v + k * h));
        let xuv = fd::d1([-2.0, -1.0, 0.0, 1.0, 2.0].map(|k| fd::derivative(|t| f(u + k * h, t), v, h)), h);
        RawJet { x: su[2], xu: fd::d1(su, h), xv: fd::d1(sv, h), xuu: fd::d2(su, h), xuv, xvv: fd::d2(sv, h) }
    }

    /// Analytic jet when available, otherwise a fourth-order difference jet.
    /// Periodic directions wrap; non-periodic ones need `2h` of clearance.
    pub fn evaluate_jet(&self, u: f64, v: f64, h: f64) -> Result<Jet> {
        let raw = match self.immersion.analytic_jet(u, v) {
            Some(j) => {
                self.domain.check_reach(u, v, 0.0)?;
                j
            }
            None => {
                self.domain.check_reach(u, v, 2.0 * h)?;
                self.fd_jet(u, v, h)
            }
        };
        let x = SpherePoint::new(raw.x)
            .ok_or_else(|| GeometryError::InvalidChart(format!("{}: zero position", self.name)))?;
        Ok(Jet { x, xu: raw.xu, xv: raw.xv, xuu: raw.xuu, xuv: raw.xuv, xvv: raw.xvv })
    }
}

/// Immersion given by a closure, with no analytic jet.
pub struct FnImmersion<F>(pub F);

impl<F> Immersion for FnImmersion<F>
where
    F: Fn(f64, f64) -> ComplexVec3 + Send + Sync,
{
    fn position(&self, u: f64, v: f64) -> ComplexVec3 {
        (self.0)(u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_complex::Complex64;

    fn legendrian_fd() -> ChartSpec {
        let s = 1.0 / 3f64.sqrt();
        let imm = FnImmersion(move |u: f64, v: f64| {
            ComplexVec3::new(
                Complex64::from_polar(s, u),
                Complex64::from_polar(s, v),
                Complex64::from_polar(s, -(u + v)),
            )
        });
        let tau = std::f64::consts::TAU;
        ChartSpec::new("fd-legendrian", Arc::new(imm), Domain::doubly_periodic((0.0, tau), (0.0, tau)), None).unwrap()
    }

    #[test]
    fn legendrian_analytic_xu() {
        let chart = catalog::legendrian_clifford();
        let (u, v) = (0.4, -1.3);
        let jet = chart.evaluate_jet(u, v, 1e-3).unwrap();
        let s = 1.0 / 3f64.sqrt();
        let i = crate::ambient::I;
        let expected =
            ComplexVec3::new(i * Complex64::from_polar(s, u), 0.0.into(), -i * Complex64::from_polar(s, -(u + v)));
        assert!((jet.xu - expected).max_abs() < 1e-15);
    }

    #[test]
    fn fd_matches_analytic_and_converges() {
        let exact = catalog::legendrian_clifford();
        let fd = legendrian_fd();
        let (u, v) = (0.3, 0.2);
        let je = exact.evaluate_jet(u, v, 1e-2).unwrap();
        let err = |h: f64| {
            let jf = fd.evaluate_jet(u, v, h).unwrap();
            (jf.xu - je.xu).max_abs().max((jf.xv - je.xv).max_abs())
        };
        let e1 = err(1e-2);
        assert!(e1 <= 1e-7, "h=1e-2 error {e1:e}");
        let e2 = err(5e-3);
        assert!(e1 / e2 >= 8.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn fd_second_partials() {
        let exact = catalog::legendrian_clifford();
        let fd = legendrian_fd();
        let je = exact.evaluate_jet(1.0, 2.0, 1e-3).unwrap();
        let jf = fd.evaluate_jet(1.0, 2.0, 1e-3).unwrap();
        assert!((je.xuu - jf.xuu).max_abs() < 1e-8);
        assert!((je.xuv - jf.xuv).max_abs() < 1e-8);
        assert!((je.xvv - jf.xvv).max_abs() < 1e-8);
    }

    #[test]
    fn constant_chart_is_degenerate() {
        let imm = FnImmersion(|_: f64, _: f64| ComplexVec3::real(1.0, 0.0, 0.0));
        let chart =
            ChartSpec::new("const", Arc::new(imm), Domain::doubly_periodic((0.0, 1.0), (0.0, 1.0)), None).unwrap();
        let jet = chart.evaluate_jet(0.5, 0.5, 1e-3).unwrap();
        assert!(matches!(jet.check_immersed(1e-14), Err(GeometryError::DegenerateMetric { .. })));
    }

    #[test]
    fn boundary_too_close() {
        let imm = FnImmersion(|u: f64, v: f64| ComplexVec3::real(u.cos() * v.cos(), u.sin() * v.cos(), v.sin()));
        let domain = Domain { u: (0.0, 1.0), v: (0.0, 1.0), periodic_u: false, periodic_v: false };
        let chart = ChartSpec::new("patch", Arc::new(imm), domain, None).unwrap();
        assert!(chart.evaluate_jet(0.5, 0.5, 1e-3).is_ok());
        assert!(matches!(chart.evaluate_jet(0.001, 0.5, 1e-3), Err(GeometryError::BoundaryTooClose { .. })));
    }

    #[test]
    fn off_sphere_chart_rejected() {
        let imm = FnImmersion(|u: f64, _: f64| ComplexVec3::real(2.0 * u.cos(), 0.0, 0.0));
        let r = ChartSpec::new("bad", Arc::new(imm), Domain::doubly_periodic((0.0, 1.0), (0.0, 1.0)), None);
        assert!(matches!(r, Err(GeometryError::InvalidChart(_))));
    }
}
