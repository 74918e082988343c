//! Everything the structure equations need at one surface point.
//!
//! A sample evaluates jets and frames on a 9x9 lattice of step `h` around the
//! point, measures connection tables on the inner 5x5 block, and
//! differentiates the scalar fields `alpha`, `beta`, `a`, `b` there with the
//! grid operators of [`crate::field`].

use crate::chart::{ChartSpec, Jet, Metric};
use crate::error::Result;
use crate::field::{laplace_beltrami, surface_gradient, Gradient, GridField};
use crate::frame::FramePoint;
use crate::structure::connection::{table_from_frames, ConnectionTable};

const OUTER: usize = 9;
const INNER: usize = 5;
const HALF: isize = (OUTER / 2) as isize;

/// Scalar inputs of the curvature, Codazzi and reduced equations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PointValues {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub grad_alpha: Gradient,
    pub grad_beta: Gradient,
    pub grad_a: Gradient,
    pub grad_b: Gradient,
    pub lap_alpha: f64,
    pub lap_beta: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct PointSample {
    pub u: f64,
    pub v: f64,
    pub frame: FramePoint,
    pub table: ConnectionTable,
    pub values: PointValues,
    pub k_intrinsic: f64,
}

impl std::ops::Add for Metric {
    type Output = Metric;
    fn add(self, o: Metric) -> Metric {
        Metric { g11: self.g11 + o.g11, g12: self.g12 + o.g12, g22: self.g22 + o.g22 }
    }
}

impl std::ops::Sub for Metric {
    type Output = Metric;
    fn sub(self, o: Metric) -> Metric {
        Metric { g11: self.g11 - o.g11, g12: self.g12 - o.g12, g22: self.g22 - o.g22 }
    }
}

impl std::ops::Mul<f64> for Metric {
    type Output = Metric;
    fn mul(self, s: f64) -> Metric {
        Metric { g11: self.g11 * s, g12: self.g12 * s, g22: self.g22 * s }
    }
}

/// Brioschi formula: Gaussian curvature from the first fundamental form and
/// its first and second partials at the centre of a metric patch.
pub fn brioschi(metric: &GridField<Metric>, i: usize, j: usize) -> Result<f64> {
    let m = metric.get(i, j);
    let (mu, mv) = metric.partials(i, j)?;
    let (muu, muv, mvv) = metric.second_partials(i, j)?;
    let (e, f, g) = (m.g11, m.g12, m.g22);
    let (eu, fu, gu) = (mu.g11, mu.g12, mu.g22);
    let (ev, fv, gv) = (mv.g11, mv.g12, mv.g22);
    let (evv, fuv, guu) = (mvv.g11, muv.g12, muu.g22);
    let det3 = |r: [[f64; 3]; 3]| {
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    };
    let first =
        det3([[-0.5 * evv + fuv - 0.5 * guu, 0.5 * eu, fu - 0.5 * ev], [fv - 0.5 * gu, e, f], [0.5 * gv, f, g]]);
    let second = det3([[0.0, 0.5 * ev, 0.5 * gu], [0.5 * ev, e, f], [0.5 * gu, f, g]]);
    let w = e * g - f * f;
    Ok((first - second) / (w * w))
}

fn metric_patch(chart: &ChartSpec, u: f64, v: f64, h: f64) -> Result<GridField<Metric>> {
    let mut values = Vec::with_capacity(INNER * INNER);
    for b in -2..=2 {
        for a in -2..=2 {
            values.push(chart.evaluate_jet(u + a as f64 * h, v + b as f64 * h, h)?.metric());
        }
    }
    Ok(GridField::patch(INNER, h, values))
}

/// Gaussian curvature at `(u, v)` from the metric alone, differentiated with
/// fourth-order stencils of step `h`.
pub fn gauss_curvature_intrinsic(chart: &ChartSpec, u: f64, v: f64, h: f64) -> Result<f64> {
    brioschi(&metric_patch(chart, u, v, h)?, 2, 2)
}

impl PointSample {
    pub fn compute(chart: &ChartSpec, u: f64, v: f64, h: f64) -> Result<Self> {
        chart.domain.check_reach(u, v, HALF as f64 * h)?;
        let at = |a: isize, b: isize| (u + a as f64 * h, v + b as f64 * h);
        let mut jets: Vec<Option<Jet>> = vec![None; OUTER * OUTER];
        let mut frames: Vec<Option<FramePoint>> = vec![None; OUTER * OUTER];
        let idx = |a: isize, b: isize| ((b + HALF) as usize) * OUTER + (a + HALF) as usize;
        // Frames are needed on the plus-shaped region reached by the inner
        // block's stencils.
        for b in -HALF..=HALF {
            for a in -HALF..=HALF {
                if a.abs() > 2 && b.abs() > 2 {
                    continue;
                }
                let (pu, pv) = at(a, b);
                let jet = chart.evaluate_jet(pu, pv, h)?;
                frames[idx(a, b)] = Some(FramePoint::build(&jet)?);
                jets[idx(a, b)] = Some(jet);
            }
        }
        let frame = |a: isize, b: isize| frames[idx(a, b)].as_ref().expect("frame in stencil region");

        let mut tables = Vec::with_capacity(INNER * INNER);
        let mut metrics = Vec::with_capacity(INNER * INNER);
        for b in -2..=2isize {
            for a in -2..=2isize {
                let su = [-2, -1, 0, 1, 2].map(|k| frame(a + k, b));
                let sv = [-2, -1, 0, 1, 2].map(|k| frame(a, b + k));
                tables.push(table_from_frames(frame(a, b), su, sv, h)?);
                metrics.push(jets[idx(a, b)].expect("jet").metric());
            }
        }
        let patch_frames: Vec<&FramePoint> =
            (-2..=2isize).flat_map(|b| (-2..=2isize).map(move |a| (a, b))).map(|(a, b)| frame(a, b)).collect();
        let scalar = |f: &dyn Fn(usize) -> f64| GridField::patch(INNER, h, (0..INNER * INNER).map(f).collect());
        let alpha_f = scalar(&|n| patch_frames[n].alpha);
        let beta_f = scalar(&|n| patch_frames[n].beta);
        let a_f = scalar(&|n| tables[n].a());
        let b_f = scalar(&|n| tables[n].b());
        let metric = GridField::patch(INNER, h, metrics);

        let center = *frame(0, 0);
        let table = tables[INNER * INNER / 2];
        let grad = |f: &GridField<f64>| surface_gradient(f, 2, 2, center.coords);
        let values = PointValues {
            alpha: center.alpha,
            beta: center.beta,
            a: table.a(),
            b: table.b(),
            grad_alpha: grad(&alpha_f)?,
            grad_beta: grad(&beta_f)?,
            grad_a: grad(&a_f)?,
            grad_b: grad(&b_f)?,
            lap_alpha: laplace_beltrami(&alpha_f, &metric, 2, 2)?,
            lap_beta: laplace_beltrami(&beta_f, &metric, 2, 2)?,
        };
        let k_intrinsic = brioschi(&metric, 2, 2)?;
        Ok(PointSample { u, v, frame: center, table, values, k_intrinsic })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::Grid;

    #[test]
    fn intrinsic_curvature_of_fixtures() {
        let sphere = catalog::geodesic_sphere();
        let grid = Grid::new(sphere.domain, 16, 16);
        for (u, v) in grid.points() {
            let k = gauss_curvature_intrinsic(&sphere, u, v, 1e-3).unwrap();
            assert!((k - 1.0).abs() <= 1e-5, "K = {k} at v = {v}");
        }
        let torus = catalog::legendrian_clifford();
        for (u, v) in Grid::new(torus.domain, 8, 8).points() {
            assert!(gauss_curvature_intrinsic(&torus, u, v, 1e-3).unwrap().abs() <= 1e-5);
        }
    }

    #[test]
    fn intrinsic_curvature_richardson() {
        let sphere = catalog::geodesic_sphere();
        let err = |h: f64| (gauss_curvature_intrinsic(&sphere, 0.3, 0.9, h).unwrap() - 1.0).abs();
        let (e1, e2) = (err(0.04), err(0.02));
        assert!(e1 / e2 >= 4.0, "{e1:e} / {e2:e}");
    }

    #[test]
    fn sample_on_legendrian_torus() {
        let chart = catalog::legendrian_clifford();
        let s = PointSample::compute(&chart, 1.0, 2.0, 1e-3).unwrap();
        assert!(s.values.a.abs() < 1e-8);
        assert!((s.values.b.abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-8);
        assert!(s.values.grad_alpha.norm_sq() < 1e-12);
        assert!(s.values.grad_b.norm_sq() < 1e-12);
        assert!(s.values.lap_alpha.abs() < 1e-6);
        assert!(s.k_intrinsic.abs() < 1e-5);
    }

    #[test]
    fn sample_gradients_on_tilted_sphere() {
        // On a totally geodesic surface the Reeb row forces
        // d(beta) = -cos(alpha) theta^1 and d(alpha) = sin(alpha) cot(beta) theta^1.
        let chart = catalog::tilted_sphere();
        let s = PointSample::compute(&chart, 0.3, 0.2, 1e-3).unwrap();
        let v = s.values;
        assert!((v.grad_beta.f1 + v.alpha.cos()).abs() < 1e-8, "{v:?}");
        assert!(v.grad_beta.f2.abs() < 1e-8);
        assert!((v.grad_alpha.f1 - v.alpha.sin() / v.beta.tan()).abs() < 1e-8);
        assert!((s.k_intrinsic - 1.0).abs() < 1e-5);
    }
}
