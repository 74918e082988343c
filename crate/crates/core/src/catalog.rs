//! Built-in surfaces: homogeneous tori, great 2-spheres, and the circle
//! locus that constant-angle minimal tori are expected to satisfy.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::ambient::{ComplexVec3, I};
use crate::chart::{ChartSpec, Domain, Immersion, RawJet};
use crate::error::{GeometryError, Result};
use crate::field::Grid;
use crate::structure::connection::connection_forms;

/// Step used by the torus search.
const SEARCH_H: f64 = 1e-3;
/// Max-minus-min spread below which an angle counts as constant.
pub const CONSTANCY_TOL: f64 = 1e-6;

/// `x(u, v) = (r_j exp(i (m_j u + n_j v + phi_j)))_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousTorusSpec {
    pub radii: [f64; 3],
    pub freq: [[i32; 2]; 3],
    pub phases: [f64; 3],
}

impl HomogeneousTorusSpec {
    /// Validated spec: radii on the unit sphere to `1e-12` and independent
    /// wave vectors.
    pub fn new(radii: [f64; 3], freq: [[i32; 2]; 3], phases: [f64; 3]) -> Result<Self> {
        let spec = HomogeneousTorusSpec { radii, freq, phases };
        spec.validate()?;
        Ok(spec)
    }

    /// Equal radii `1/sqrt 3`, zero phases.
    pub fn equal_radii(freq: [[i32; 2]; 3]) -> Self {
        let r = 1.0 / 3f64.sqrt();
        HomogeneousTorusSpec { radii: [r; 3], freq, phases: [0.0; 3] }
    }

    /// Rescales radii whose norm is within `tol` of one, so that specs
    /// written with a few decimals are accepted.
    pub fn normalized(radii: [f64; 3], freq: [[i32; 2]; 3], phases: [f64; 3], tol: f64) -> Result<Self> {
        let norm = radii.iter().map(|r| r * r).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(GeometryError::DegenerateSpec(format!("radii norm {norm} is not 1")));
        }
        Self::new(radii.map(|r| r / norm), freq, phases)
    }

    /// Constant induced metric `[g11, g12, g22]`.
    pub fn metric(&self) -> [f64; 3] {
        let mut g = [0.0; 3];
        for (r, [m, n]) in self.radii.iter().zip(self.freq) {
            let (r2, m, n) = (r * r, m as f64, n as f64);
            g[0] += r2 * m * m;
            g[1] += r2 * m * n;
            g[2] += r2 * n * n;
        }
        g
    }

    fn validate(&self) -> Result<()> {
        if self.radii.iter().chain(self.phases.iter()).any(|x| !x.is_finite()) {
            return Err(GeometryError::DegenerateSpec("non-finite radius or phase".into()));
        }
        let s: f64 = self.radii.iter().map(|r| r * r).sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(GeometryError::DegenerateSpec(format!("sum of squared radii is {s}, not 1")));
        }
        let [g11, g12, g22] = self.metric();
        let det = g11 * g22 - g12 * g12;
        if det <= 1e-12 {
            return Err(GeometryError::DegenerateSpec(format!(
                "wave vectors {:?} are dependent (metric determinant {det:e})",
                self.freq
            )));
        }
        Ok(())
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        let key = |s: &Self| (s.radii, s.freq, s.phases);
        let (a, b) = (key(self), key(other));
        a.0.iter()
            .zip(b.0.iter())
            .map(|(x, y)| x.total_cmp(y))
            .chain(std::iter::once(a.1.cmp(&b.1)))
            .chain(a.2.iter().zip(b.2.iter()).map(|(x, y)| x.total_cmp(y)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for HomogeneousTorusSpec {
    /// `torus:r1,r2,r3;m1,n1;m2,n2;m3,n3`, the form accepted by [`chart_by_name`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r1, r2, r3] = self.radii;
        write!(f, "torus:{r1},{r2},{r3}")?;
        for [m, n] in self.freq {
            write!(f, ";{m},{n}")?;
        }
        Ok(())
    }
}

struct Torus(HomogeneousTorusSpec);

impl Torus {
    fn phases(&self, u: f64, v: f64) -> [Complex64; 3] {
        let s = &self.0;
        [0, 1, 2].map(|j| {
            let [m, n] = s.freq[j];
            Complex64::from_polar(s.radii[j], m as f64 * u + n as f64 * v + s.phases[j])
        })
    }
}

impl Immersion for Torus {
    fn position(&self, u: f64, v: f64) -> ComplexVec3 {
        ComplexVec3(self.phases(u, v))
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<RawJet> {
        let z = self.phases(u, v);
        let f = self.0.freq;
        let comp = |g: &dyn Fn(f64, f64) -> Complex64| {
            ComplexVec3([0, 1, 2].map(|j| g(f[j][0] as f64, f[j][1] as f64) * z[j]))
        };
        Some(RawJet {
            x: ComplexVec3(z),
            xu: comp(&|m, _| I * m),
            xv: comp(&|_, n| I * n),
            xuu: comp(&|m, _| (-m * m).into()),
            xuv: comp(&|m, n| (-m * n).into()),
            xvv: comp(&|_, n| (-n * n).into()),
        })
    }
}

/// Chart of a homogeneous torus on `[0, 2 pi)^2` with analytic jets.
pub fn build_torus(spec: &HomogeneousTorusSpec) -> Result<ChartSpec> {
    spec.validate()?;
    ChartSpec::new(spec.to_string(), Arc::new(Torus(*spec)), Domain::doubly_periodic((0.0, TAU), (0.0, TAU)), Some(0.0))
}

/// Great 2-sphere `cos u cos v A + sin u cos v B + sin v C` for a real
/// orthonormal triple `A, B, C`.
struct GreatSphere([ComplexVec3; 3]);

impl Immersion for GreatSphere {
    fn position(&self, u: f64, v: f64) -> ComplexVec3 {
        self.analytic_jet(u, v).expect("analytic").x
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<RawJet> {
        let [a, b, c] = self.0;
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        Some(RawJet {
            x: a * (cu * cv) + b * (su * cv) + c * sv,
            xu: a * (-su * cv) + b * (cu * cv),
            xv: a * (-cu * sv) - b * (su * sv) + c * cv,
            xuu: a * (-cu * cv) - b * (su * cv),
            xuv: a * (su * sv) - b * (cu * sv),
            xvv: a * (-cu * cv) - b * (su * cv) - c * sv,
        })
    }
}

/// Distance kept from the poles of the sphere charts.
pub const POLAR_MARGIN: f64 = 0.1;

fn sphere_chart(name: &str, frame: [ComplexVec3; 3]) -> ChartSpec {
    let domain = Domain {
        u: (0.0, TAU),
        v: (-FRAC_PI_2 + POLAR_MARGIN, FRAC_PI_2 - POLAR_MARGIN),
        periodic_u: true,
        periodic_v: false,
    };
    ChartSpec::new(name, Arc::new(GreatSphere(frame)), domain, Some(1.0)).expect("sphere chart is valid")
}

/// Totally real great sphere `(cos u cos v, sin u cos v, sin v)`.
pub fn geodesic_sphere() -> ChartSpec {
    sphere_chart(
        "geodesic-s2",
        [ComplexVec3::real(1.0, 0.0, 0.0), ComplexVec3::real(0.0, 1.0, 0.0), ComplexVec3::real(0.0, 0.0, 1.0)],
    )
}

/// Great sphere through `(1,0,0)`, `(i sin t, cos t, 0)`, `(0, i sin s, cos s)`
/// with `t = 0.7`, `s = 0.4`. Totally geodesic, but neither totally real nor
/// of constant angles.
pub fn tilted_sphere() -> ChartSpec {
    let (st, ct) = 0.7f64.sin_cos();
    let (ss, cs) = 0.4f64.sin_cos();
    let z = Complex64::new(0.0, 0.0);
    sphere_chart(
        "tilted-s2",
        [
            ComplexVec3::real(1.0, 0.0, 0.0),
            ComplexVec3::new(I * st, ct.into(), z),
            ComplexVec3::new(z, I * ss, cs.into()),
        ],
    )
}

/// Minimal Legendrian torus `(e^{iu}, e^{iv}, e^{-i(u+v)}) / sqrt 3`.
pub fn legendrian_clifford() -> ChartSpec {
    let spec = HomogeneousTorusSpec::equal_radii([[1, 0], [0, 1], [-1, -1]]);
    let mut chart = build_torus(&spec).expect("valid torus");
    chart.name = "legendrian-clifford".into();
    chart
}

/// Clifford torus of the 3-sphere; the Reeb field is tangent to it.
pub fn s3_clifford() -> ChartSpec {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let spec = HomogeneousTorusSpec { radii: [r, r, 0.0], freq: [[1, 0], [0, 1], [0, 0]], phases: [0.0; 3] };
    let mut chart = build_torus(&spec).expect("valid torus");
    chart.name = "s3-clifford".into();
    chart
}

/// Torus with unequal radii that is not minimal.
pub fn nonminimal_probe_spec() -> HomogeneousTorusSpec {
    HomogeneousTorusSpec { radii: [0.9, 0.3, 0.1f64.sqrt()], freq: [[1, 0], [0, 1], [0, 0]], phases: [0.0; 3] }
}

/// Names accepted by [`chart_by_name`] besides `torus:` strings.
pub const NAMED_CHARTS: [&str; 4] = ["legendrian-clifford", "geodesic-s2", "tilted-s2", "s3-clifford"];

/// Radii within this distance of the unit norm are rescaled when parsed.
pub const RADII_PARSE_TOL: f64 = 1e-6;

fn parse_torus(body: &str) -> Result<HomogeneousTorusSpec> {
    let bad = |what: &str| GeometryError::InvalidChart(format!("torus:{body}: {what}"));
    let parts: Vec<&str> = body.split(';').collect();
    if parts.len() != 4 {
        return Err(bad("expected r1,r2,r3;m1,n1;m2,n2;m3,n3"));
    }
    let radii: Vec<f64> = parts[0]
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| bad(&format!("radius: {e}")))?;
    let radii: [f64; 3] = radii.try_into().map_err(|_| bad("need three radii"))?;
    let mut freq = [[0i32; 2]; 3];
    for (slot, part) in freq.iter_mut().zip(&parts[1..]) {
        let pair: Vec<i32> = part
            .split(',')
            .map(|s| s.trim().parse::<i32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| bad(&format!("frequency: {e}")))?;
        *slot = pair.try_into().map_err(|_| bad("frequencies come in pairs"))?;
    }
    HomogeneousTorusSpec::normalized(radii, freq, [0.0; 3], RADII_PARSE_TOL)
}

/// Looks up a named fixture or parses a `torus:` string.
pub fn chart_by_name(name: &str) -> Result<ChartSpec> {
    match name {
        "legendrian-clifford" => Ok(legendrian_clifford()),
        "geodesic-s2" => Ok(geodesic_sphere()),
        "tilted-s2" => Ok(tilted_sphere()),
        "s3-clifford" => Ok(s3_clifford()),
        _ => match name.strip_prefix("torus:") {
            Some(body) => build_torus(&parse_torus(body)?),
            None => Err(GeometryError::InvalidChart(format!("unknown chart {name:?}"))),
        },
    }
}

/// `a^2 + (b - cos(beta)/(1 + sin^2 beta))^2 - 2 sin^4(beta)/(1 + sin^2 beta)^2`.
pub fn circle_locus(beta: f64, a: f64, b: f64) -> f64 {
    let (s, c) = beta.sin_cos();
    let d = 1.0 + s * s;
    let centre = c / d;
    a * a + (b - centre) * (b - centre) - 2.0 * s.powi(4) / (d * d)
}

/// Centre `cos(beta)/(1 + sin^2 beta)` and radius
/// `sqrt 2 sin^2(beta)/(1 + sin^2 beta)` of the circle in the `(a, b)` plane.
pub fn circle_geometry(beta: f64) -> (f64, f64) {
    let (s, c) = beta.sin_cos();
    let d = 1.0 + s * s;
    (c / d, std::f64::consts::SQRT_2 * s * s / d)
}

/// The two values of `b` on the circle with `a = 0`.
pub fn a_zero_branch(beta: f64) -> [f64; 2] {
    let (centre, radius) = circle_geometry(beta);
    [centre + radius, centre - radius]
}

/// Non-negative `a` on the circle with `b = 0`, when it exists
/// (`beta >= pi/4` on `[0, pi/2]`).
pub fn b_zero_branch(beta: f64) -> Option<f64> {
    let (centre, radius) = circle_geometry(beta);
    let a2 = (radius - centre) * (radius + centre);
    // Rounding can push the radicand just below zero at the boundary angle.
    (a2 >= -4.0 * f64::EPSILON * radius * radius).then(|| a2.max(0.0).sqrt())
}

/// Grid-averaged angle and second fundamental form data of a surface with
/// constant angles, with its circle residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocusSample {
    pub beta: f64,
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub circle_residual: f64,
}

impl LocusSample {
    pub fn new(beta: f64, alpha: f64, a: f64, b: f64) -> Self {
        LocusSample { beta, alpha, a, b, circle_residual: circle_locus(beta, a, b) }
    }
}

/// A torus kept by [`minimal_torus_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchHit {
    pub spec: HomogeneousTorusSpec,
    /// Worst mean curvature norm on the confirmation grid.
    pub minimality: f64,
    /// `max - min` of `beta` and `alpha` over the confirmation grid.
    pub spread: [f64; 2],
    pub sample: LocusSample,
}

/// Worst mean curvature on an `n x n` grid, or `None` when any point is
/// degenerate.
fn max_minimality(chart: &ChartSpec, n: usize) -> Option<f64> {
    Grid::new(chart.domain, n, n)
        .points()
        .map(|(u, v)| connection_forms(chart, u, v, SEARCH_H).ok().map(|(_, t)| t.minimality_residual()))
        .try_fold(0.0f64, |m, r| r.map(|r| m.max(r)))
}

fn confirm(spec: &HomogeneousTorusSpec, tol: f64) -> Option<SearchHit> {
    let chart = build_torus(spec).ok()?;
    if max_minimality(&chart, 16)? > tol {
        return None;
    }
    let grid = Grid::new(chart.domain, 64, 64);
    let mut worst = 0.0f64;
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    let mut sums = [0.0; 4];
    for (u, v) in grid.points() {
        let (f, t) = connection_forms(&chart, u, v, SEARCH_H).ok()?;
        worst = worst.max(t.minimality_residual());
        for (k, x) in [f.beta, f.alpha].into_iter().enumerate() {
            lo[k] = lo[k].min(x);
            hi[k] = hi[k].max(x);
        }
        for (s, x) in sums.iter_mut().zip([f.beta, f.alpha, t.a(), t.b()]) {
            *s += x;
        }
    }
    let spread = [hi[0] - lo[0], hi[1] - lo[1]];
    if worst > tol || spread.iter().any(|s| *s > CONSTANCY_TOL) {
        return None;
    }
    let n = grid.len() as f64;
    let [beta, alpha, a, b] = sums.map(|s| s / n);
    Some(SearchHit { spec: *spec, minimality: worst, spread, sample: LocusSample::new(beta, alpha, a, b) })
}

/// Homogeneous tori among `radii x freqs` whose mean curvature stays below
/// `tol`: a 16x16 triage grid, then a 64x64 confirmation grid. Only tori
/// with constant angles are reported; output is sorted by spec.
pub fn minimal_torus_search(radii: &[[f64; 3]], freqs: &[[[i32; 2]; 3]], tol: f64) -> Vec<SearchHit> {
    let candidates: Vec<HomogeneousTorusSpec> = radii
        .iter()
        .flat_map(|r| freqs.iter().map(move |f| HomogeneousTorusSpec { radii: *r, freq: *f, phases: [0.0; 3] }))
        .filter(|s| s.validate().is_ok())
        .collect();
    let mut hits: Vec<SearchHit> = candidates.par_iter().filter_map(|s| confirm(s, tol)).collect();
    hits.sort_by(|a, b| a.spec.total_cmp(&b.spec));
    hits
}

/// Radii triples with squared radii on the lattice `k / n`, all positive.
pub fn squared_radii_grid(n: usize) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n - i {
            let k = n - i - j;
            let r = [i, j, k].map(|x| (x as f64 / n as f64).sqrt());
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::FramePoint;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn torus_stays_on_sphere() {
        let chart = build_torus(&HomogeneousTorusSpec::equal_radii([[1, 0], [0, 1], [1, 1]])).unwrap();
        for (u, v) in Grid::new(chart.domain, 9, 9).points() {
            assert!((chart.position(u, v).norm() - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn dependent_frequencies_rejected() {
        let spec = HomogeneousTorusSpec::equal_radii([[1, 1], [2, 2], [1, 1]]);
        assert!(matches!(build_torus(&spec), Err(GeometryError::DegenerateSpec(_))));
        assert!(HomogeneousTorusSpec::new([1.0, 1.0, 1.0], [[1, 0], [0, 1], [0, 0]], [0.0; 3]).is_err());
    }

    #[test]
    fn named_charts_resolve() {
        for name in NAMED_CHARTS {
            assert_eq!(chart_by_name(name).unwrap().name, name);
        }
        assert!(chart_by_name("gauss").is_err());
        let t = chart_by_name("torus:0.577350269,0.577350269,0.577350269;1,0;0,1;-1,-1").unwrap();
        let l = legendrian_clifford();
        for (u, v) in Grid::new(l.domain, 5, 5).points() {
            assert!((t.position(u, v) - l.position(u, v)).max_abs() <= 1e-9);
        }
        assert!(chart_by_name("torus:1,1,1;1,0;0,1;0,0").is_err());
        assert!(chart_by_name("torus:1,0;0,1").is_err());
    }

    #[test]
    fn display_round_trips() {
        let spec = nonminimal_probe_spec();
        let chart = chart_by_name(&spec.to_string()).unwrap();
        assert_eq!(chart.name, spec.to_string());
    }

    #[test]
    fn circle_special_values() {
        for beta in [0.3, 0.9, 1.4] {
            for b in a_zero_branch(beta) {
                assert!(circle_locus(beta, 0.0, b).abs() < 1e-15);
            }
        }
        // At beta = pi/2 the circle is a^2 + b^2 = 1/2.
        assert!(circle_locus(FRAC_PI_2, 0.5, 0.5).abs() < 1e-15);
        assert_eq!(circle_locus(0.7, 0.3, 0.1), circle_locus(0.7, -0.3, 0.1));
        let a = b_zero_branch(FRAC_PI_4).unwrap();
        assert!(a < 1e-7, "{a}");
        assert!(circle_locus(FRAC_PI_4, 0.0, 0.0).abs() < 1e-12);
        assert!(b_zero_branch(0.7).is_none());
        let a = b_zero_branch(1.0).unwrap();
        assert!(circle_locus(1.0, a, 0.0).abs() < 1e-15);
    }

    #[test]
    fn legendrian_angles() {
        let chart = legendrian_clifford();
        let jet = chart.evaluate_jet(0.0, 0.0, 1e-3).unwrap();
        let f = FramePoint::build(&jet).unwrap();
        assert!((f.beta - FRAC_PI_2).abs() < 1e-12);
        assert!(f.legendrian_fallback);
    }

    #[test]
    fn search_finds_minimal_tori() {
        let r = 1.0 / 3f64.sqrt();
        let freqs = [[[1, 0], [0, 1], [-1, -1]], [[1, 0], [0, 1], [1, 1]], [[1, 0], [0, 1], [0, 0]]];
        let radii = [[r, r, r], [0.9, 0.3, 0.1f64.sqrt()]];
        let hits = minimal_torus_search(&radii, &freqs, 1e-6);
        assert_eq!(hits.len(), 2, "{hits:?}");
        let leg = hits.iter().find(|h| h.spec.freq[2] == [-1, -1]).unwrap();
        assert!((leg.sample.beta - FRAC_PI_2).abs() < 1e-9);
        let mut rev = freqs;
        rev.reverse();
        let mut rr = radii;
        rr.reverse();
        assert_eq!(minimal_torus_search(&rr, &rev, 1e-6), hits);
        assert!(minimal_torus_search(&[[0.9, 0.3, 0.1f64.sqrt()]], &freqs, 1e-6).is_empty());
    }

    #[test]
    fn radii_grid_is_on_sphere() {
        let g = squared_radii_grid(6);
        assert_eq!(g.len(), 10);
        for r in g {
            assert!((r.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-15);
        }
    }
}
