//! Residual suites over a sampling grid.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use s5frames::catalog::{self, circle_locus, LocusSample, CONSTANCY_TOL};
use s5frames::structure::stats::Accumulator;
use s5frames::structure::{
    codazzi, connection_forms, connection_table_identities, curvature, gauss_curvature_intrinsic, identities,
    parallel_normal_residual, reduced, sweep, ConnectionTable, Form,
};
use s5frames::{ChartSpec, FramePoint, GeometryError, Grid, PointSample, ResidualStats, Result};

use crate::config::{RunConfig, SkipPolicy, Suite};

/// A scalar pass/fail check that is not a per-point residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypoWatch {
    pub suite: Suite,
    pub equation: String,
    pub max_abs: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub equations: Vec<ResidualStats>,
    pub checks: Vec<Check>,
    pub samples: Vec<LocusSample>,
    pub warnings: Vec<String>,
    pub pass: bool,
    pub wall_clock_s: Option<f64>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            equations: Vec::new(),
            checks: Vec::new(),
            samples: Vec::new(),
            warnings: Vec::new(),
            pass: true,
            wall_clock_s: None,
        }
    }

    pub fn non_finite(&self) -> usize {
        self.equations.iter().map(|e| e.non_finite).sum()
    }
}

/// Default tolerances; `None` marks informational equations.
mod tol {
    pub const FRAME: f64 = 1e-9;
    pub const ANTISYMMETRY: f64 = 1e-8;
    pub const MINIMALITY: f64 = 1e-6;
    pub const IDENTITY: f64 = 1e-5;
    pub const RICHARDSON_RATIO: f64 = 4.0;
    pub const K_KNOWN: f64 = 1e-5;
    pub const K_CROSS: f64 = 1e-3;
    pub const LAPLACIAN: f64 = 1e-3;
    pub const CODAZZI: f64 = 1e-3;
    pub const REDUCED: f64 = 1e-3;
    pub const HYPOTHESIS: f64 = 1e-6;
    pub const ALGEBRA: f64 = 1e-12;
    pub const PARALLEL: f64 = 1e-5;
    pub const CIRCLE: f64 = 1e-6;
    pub const FLAT: f64 = 1e-6;
}

/// Number of synthetic triples in the elimination check.
pub const ELIMINATION_SAMPLES: usize = 10_000;
pub const ELIMINATION_SEED: u64 = 0x5eed;
/// Number of constructed on-circle samples per branch.
pub const LOCUS_SAMPLES_PER_BRANCH: usize = 50;

/// Shared per-point data, computed on first use.
pub struct Context<'a> {
    pub chart: &'a ChartSpec,
    pub grid: Grid,
    pub config: &'a RunConfig,
    frames: OnceLock<Vec<Result<FramePoint>>>,
    samples: OnceLock<Vec<Result<PointSample>>>,
    intrinsic: OnceLock<Vec<Result<f64>>>,
}

impl<'a> Context<'a> {
    pub fn new(chart: &'a ChartSpec, config: &'a RunConfig) -> Self {
        Context {
            chart,
            grid: Grid::new(chart.domain, config.grid_n_u, config.grid_n_v),
            config,
            frames: OnceLock::new(),
            samples: OnceLock::new(),
            intrinsic: OnceLock::new(),
        }
    }

    fn h(&self) -> f64 {
        self.config.h
    }

    fn frames(&self) -> &[Result<FramePoint>] {
        self.frames.get_or_init(|| {
            sweep(&self.grid, |u, v| self.chart.evaluate_jet(u, v, self.h()).and_then(|j| FramePoint::build(&j)))
        })
    }

    fn samples(&self) -> &[Result<PointSample>] {
        self.samples.get_or_init(|| sweep(&self.grid, |u, v| PointSample::compute(self.chart, u, v, self.h())))
    }

    fn intrinsic(&self) -> &[Result<f64>] {
        self.intrinsic.get_or_init(|| sweep(&self.grid, |u, v| gauss_curvature_intrinsic(self.chart, u, v, self.h())))
    }

    /// Worst mean curvature over the grid when every point was evaluated.
    fn verified_minimal(&self) -> bool {
        self.samples().iter().all(|s| s.as_ref().is_ok_and(|s| s.table.minimality_residual() <= tol::MINIMALITY))
    }

    /// Largest measured `|theta_3^4|` over evaluated points.
    fn max_theta34(&self) -> f64 {
        self.samples().iter().flatten().map(|s| Form(s.table.form(3, 4)).norm()).fold(0.0, f64::max)
    }

    fn tolerance(&self, suite: Suite, default: f64) -> Option<f64> {
        Some(self.config.tolerances.get(&suite).copied().unwrap_or(default))
    }

    /// Residual statistics of `f` over the samples.
    fn sample_stats(
        &self,
        name: &str,
        tolerance: Option<f64>,
        f: impl Fn(&PointSample) -> Result<f64>,
    ) -> ResidualStats {
        let mut acc = Accumulator::new(name);
        for s in self.samples() {
            acc.push(&s.as_ref().map_err(Clone::clone).and_then(&f));
        }
        acc.finish(tolerance)
    }

    /// Statistics for several equations evaluated together per sample.
    fn multi_stats<const N: usize>(
        &self,
        names: [&str; N],
        tolerance: Option<f64>,
        f: impl Fn(&PointSample) -> [Result<f64>; N],
    ) -> Vec<ResidualStats> {
        let mut accs = names.map(Accumulator::new);
        for s in self.samples() {
            match s {
                Ok(s) => f(s).iter().zip(accs.iter_mut()).for_each(|(r, a)| a.push(r)),
                Err(e) => accs.iter_mut().for_each(|a| a.push_error(e)),
            }
        }
        accs.into_iter().map(|a| a.finish(tolerance)).collect()
    }
}

pub fn run_suite(ctx: &Context, suite: Suite) -> SuiteReport {
    let mut report = SuiteReport::new(suite);
    match suite {
        Suite::Frames => frames(ctx, &mut report),
        Suite::Connection => connection(ctx, &mut report),
        Suite::Curvature => curvature_suite(ctx, &mut report),
        Suite::Laplacian => laplacian(ctx, &mut report),
        Suite::Codazzi => codazzi_suite(ctx, &mut report),
        Suite::Reduced => reduced_suite(ctx, &mut report),
        Suite::Parallel => parallel(ctx, &mut report),
        Suite::Locus => locus(ctx, &mut report),
        Suite::All => unreachable!("expanded during configuration"),
    }
    apply_skip_policy(&mut report, ctx.config.skip_policy);
    report.pass = report.pass && report.equations.iter().all(|e| e.pass) && report.checks.iter().all(|c| c.pass);
    report
}

fn apply_skip_policy(report: &mut SuiteReport, policy: SkipPolicy) {
    for e in &report.equations {
        if e.points_skipped == 0 {
            continue;
        }
        let reasons: Vec<String> = e.skip_reasons.iter().map(|(k, n)| format!("{k}: {n}")).collect();
        let what = if e.all_skipped() { "all".to_string() } else { e.points_skipped.to_string() };
        report.warnings.push(format!(
            "{}: {what} of {} points skipped ({})",
            e.equation,
            e.total(),
            reasons.join(", ")
        ));
        if policy == SkipPolicy::Fail {
            report.pass = false;
        }
    }
}

fn frames(ctx: &Context, report: &mut SuiteReport) {
    let t = ctx.tolerance(Suite::Frames, tol::FRAME);
    let names = ["orthonormality", "reconstruction", "contact_split", "i_action"];
    let mut accs = names.map(Accumulator::new);
    for f in ctx.frames() {
        match f {
            Ok(f) => {
                let r = f.identity_residuals();
                for (a, x) in accs.iter_mut().zip([r.orthonormality, r.reconstruction, r.contact_split, r.i_action]) {
                    a.push_value(x);
                }
            }
            Err(e) => accs.iter_mut().for_each(|a| a.push_error(e)),
        }
    }
    report.equations = accs.into_iter().map(|a| a.finish(t)).collect();
}

/// Largest entry difference between two connection tables.
fn table_distance(a: &ConnectionTable, b: &ConnectionTable) -> f64 {
    a.theta
        .iter()
        .flatten()
        .flatten()
        .zip(b.theta.iter().flatten().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Steps for the convergence check; the configured step is the reference.
const RICHARDSON_STEPS: [f64; 2] = [0.05, 0.025];
/// Below this error both coarse tables already agree with the reference to
/// rounding, so the ratio carries no information.
const RICHARDSON_FLOOR: f64 = 1e-10;

fn richardson(ctx: &Context) -> Check {
    let (nu, nv) = (ctx.grid.nu, ctx.grid.nv);
    let probes = [(nu / 4, nv / 4), (3 * nu / 4, nv / 4), (nu / 4, 3 * nv / 4), (3 * nu / 4, 3 * nv / 4)];
    let mut errs = [0.0f64; 2];
    let mut used = 0;
    for (i, j) in probes {
        let (u, v) = ctx.grid.point(i, j);
        let tables: Result<Vec<ConnectionTable>> = [ctx.h(), RICHARDSON_STEPS[0], RICHARDSON_STEPS[1]]
            .into_iter()
            .map(|h| connection_forms(ctx.chart, u, v, h).map(|(_, t)| t))
            .collect();
        let Ok(tables) = tables else { continue };
        used += 1;
        errs[0] = errs[0].max(table_distance(&tables[1], &tables[0]));
        errs[1] = errs[1].max(table_distance(&tables[2], &tables[0]));
    }
    let name = "richardson".to_string();
    if used == 0 {
        return Check {
            name,
            value: f64::NAN,
            threshold: tol::RICHARDSON_RATIO,
            pass: true,
            note: "no probe point admits a frame; not applicable".into(),
        };
    }
    let note = format!(
        "max table error {:.3e} at h = {}, {:.3e} at h = {}, reference h = {}",
        errs[0],
        RICHARDSON_STEPS[0],
        errs[1],
        RICHARDSON_STEPS[1],
        ctx.h()
    );
    if errs[0] <= RICHARDSON_FLOOR {
        return Check {
            name,
            value: f64::INFINITY,
            threshold: tol::RICHARDSON_RATIO,
            pass: true,
            note: note + "; exact to rounding",
        };
    }
    let ratio = errs[0] / errs[1];
    Check { name, value: ratio, threshold: tol::RICHARDSON_RATIO, pass: ratio >= tol::RICHARDSON_RATIO, note }
}

fn connection(ctx: &Context, report: &mut SuiteReport) {
    let over = |d: f64| ctx.tolerance(Suite::Connection, d);
    report.equations.push(ctx.sample_stats("antisymmetry", over(tol::ANTISYMMETRY), |s| Ok(s.table.antisymmetry())));
    report.equations.push(ctx.sample_stats("minimality", over(tol::MINIMALITY), |s| Ok(s.table.minimality_residual())));
    report.equations.push(ctx.sample_stats("symmetry", over(tol::MINIMALITY), |s| {
        Ok(s.table.symmetry_residuals().iter().fold(0.0, |m, x| m.max(x.abs())))
    }));
    let names: Vec<&'static str> = identities::identity_names().collect();
    let mut accs: Vec<Accumulator> = names.iter().map(|n| Accumulator::new(*n)).collect();
    for s in ctx.samples() {
        match s {
            Ok(s) => {
                for (acc, (_, r)) in accs.iter_mut().zip(connection_table_identities(&s.table, &s.values)) {
                    acc.push(&r);
                }
            }
            Err(e) => accs.iter_mut().for_each(|a| a.push_error(e)),
        }
    }
    report.equations.extend(accs.into_iter().map(|a| a.finish(over(tol::IDENTITY))));
    report.checks.push(richardson(ctx));
}

fn curvature_suite(ctx: &Context, report: &mut SuiteReport) {
    let over = |d: f64| ctx.tolerance(Suite::Curvature, d);
    if let Some(known) = ctx.chart.known_curvature {
        let mut acc = Accumulator::new("k_intrinsic.vs_known");
        ctx.intrinsic().iter().for_each(|k| acc.push(&k.clone().map(|k| k - known)));
        report.equations.push(acc.finish(over(tol::K_KNOWN)));
    }
    let intrinsic = ctx.intrinsic();
    let cross = |name: &str, tolerance: Option<f64>, f: fn(&s5frames::PointValues) -> Result<f64>| {
        let mut acc = Accumulator::new(name);
        for (s, k) in ctx.samples().iter().zip(intrinsic) {
            let r = match (s, k) {
                (Ok(s), Ok(k)) => f(&s.values).map(|x| x - k),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            acc.push(&r);
        }
        acc.finish(tolerance)
    };
    report.equations.push(cross("k_frame.vs_intrinsic", over(tol::K_CROSS), curvature::gauss_curvature_frame));
    report.equations.push(cross("k_contact.vs_intrinsic", None, curvature::gauss_curvature_contact));
}

fn laplacian(ctx: &Context, report: &mut SuiteReport) {
    let t = ctx.tolerance(Suite::Laplacian, tol::LAPLACIAN);
    report.equations.push(ctx.sample_stats("beta_laplacian", t, |s| curvature::laplacian_identity_residual(&s.values)));
    warn_if_not_parallel(ctx, report);
}

/// The Laplacian and Codazzi identities are written for a parallel `e3`.
fn warn_if_not_parallel(ctx: &Context, report: &mut SuiteReport) {
    let theta34 = ctx.max_theta34();
    if theta34 > tol::PARALLEL {
        report.warnings.push(format!("e3 is not parallel in the normal bundle (max |theta_3^4| = {theta34:.3e})"));
    }
}

fn codazzi_suite(ctx: &Context, report: &mut SuiteReport) {
    let t = ctx.tolerance(Suite::Codazzi, tol::CODAZZI);
    report.equations = ctx.multi_stats(codazzi::EQUATIONS, t, |s| codazzi::codazzi_residuals(&s.values));
    warn_if_not_parallel(ctx, report);
}

/// Synthetic check that the third reduced equation follows algebraically
/// from the first two.
pub fn elimination_check(samples: usize, seed: u64) -> ResidualStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Accumulator::new("elimination");
    for _ in 0..samples {
        let alpha = rng.gen_range(0.1..PI - 0.1);
        let beta = rng.gen_range(0.1..FRAC_PI_2 - 0.1);
        let alpha1 = rng.gen_range(-1.0..1.0);
        let r = reduced::solve_reduced_pair(alpha, beta, alpha1).map(|(grad_sq, lap_alpha)| {
            let cot_a = alpha.cos() / alpha.sin();
            lap_alpha + (2.0 * alpha).sin() + cot_a * grad_sq
        });
        acc.push(&r);
    }
    acc.finish(Some(tol::ALGEBRA))
}

fn reduced_suite(ctx: &Context, report: &mut SuiteReport) {
    let t = ctx.tolerance(Suite::Reduced, tol::REDUCED);
    let betas: Vec<f64> = ctx.samples().iter().filter_map(|s| s.as_ref().ok().map(|s| s.values.beta)).collect();
    let spread =
        betas.iter().copied().fold(f64::NEG_INFINITY, f64::max) - betas.iter().copied().fold(f64::INFINITY, f64::min);
    let beta_constant = betas.is_empty() || spread <= CONSTANCY_TOL;
    let mut accs = reduced::EQUATIONS.map(Accumulator::new);
    let mut violations = 0usize;
    // Largest of the two right-hand terms of the alpha Laplacian equation,
    // -sin(2 alpha) and -cot(alpha)|grad alpha|^2, where it was evaluated.
    let mut rhs_terms: Option<[f64; 2]> = None;
    for s in ctx.samples() {
        let r = s.as_ref().map_err(Clone::clone).and_then(|s| {
            if !beta_constant {
                return Err(GeometryError::HypothesisViolated(format!("contact angle varies by {spread:e}")));
            }
            reduced::reduced_residuals(&s.values, tol::HYPOTHESIS)
        });
        match r {
            Ok(rs) => {
                rs.iter().zip(accs.iter_mut()).for_each(|(r, a)| a.push(r));
                if let (Ok(s), Ok(_)) = (s, &rs[2]) {
                    let v = &s.values;
                    let terms = [-(2.0 * v.alpha).sin(), -v.alpha.cos() / v.alpha.sin() * v.grad_alpha.norm_sq()];
                    let acc = rhs_terms.get_or_insert([f64::NEG_INFINITY; 2]);
                    acc[0] = acc[0].max(terms[0]);
                    acc[1] = acc[1].max(terms[1]);
                }
            }
            Err(GeometryError::HypothesisViolated(_)) => {
                violations += 1;
                accs.iter_mut().for_each(|a| a.push_skip("hypothesis"));
            }
            Err(e) => accs.iter_mut().for_each(|a| a.push_error(&e)),
        }
    }
    if violations > 0 {
        report.warnings.push(format!(
            "reduced system assumes a = b = 0 and constant contact angle; hypothesis fails at {violations} points"
        ));
    }
    report.equations = accs.into_iter().map(|a| a.finish(t)).collect();
    if let Some([sin_term, grad_term]) = rhs_terms {
        // Informational: both terms are non-positive for alpha in (0, pi/2),
        // so a constant alpha there cannot satisfy the equation.
        report.checks.push(Check {
            name: "alpha_laplacian.rhs_sign".into(),
            value: sin_term.max(grad_term),
            threshold: 0.0,
            pass: true,
            note: format!("max -sin(2 alpha) = {sin_term:.3e}, max -cot(alpha)|grad alpha|^2 = {grad_term:.3e}"),
        });
    }
    // Pure algebra: the tolerance is not configurable.
    report.equations.push(elimination_check(ELIMINATION_SAMPLES, ELIMINATION_SEED));
}

fn parallel(ctx: &Context, report: &mut SuiteReport) {
    let t = ctx.tolerance(Suite::Parallel, tol::PARALLEL);
    let mut norms = ["theta3_4.norm", "theta3_5.norm"].map(Accumulator::new);
    let mut closed = identities::PARALLEL_EQUATIONS.map(Accumulator::new);
    for s in ctx.samples() {
        match s {
            Ok(s) => {
                let p = parallel_normal_residual(&s.table, &s.values);
                norms[0].push_value(p.theta34);
                norms[1].push_value(p.theta35);
                for (acc, (_, r)) in closed.iter_mut().zip(p.closed_form.iter()) {
                    acc.push(r);
                }
            }
            Err(e) => norms.iter_mut().chain(closed.iter_mut()).for_each(|a| a.push_error(e)),
        }
    }
    report.equations.extend(norms.into_iter().map(|a| a.finish(None)));
    report.equations.extend(closed.into_iter().map(|a| a.finish(t)));
}

/// On-circle samples built from both branches: `a = 0` over the full range
/// of contact angles, `b = 0` over `(pi/4, pi/2]`.
pub fn constructed_locus_samples() -> Vec<LocusSample> {
    let n = LOCUS_SAMPLES_PER_BRANCH;
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        let beta = 0.05 + (FRAC_PI_2 - 0.05) * k as f64 / (n - 1) as f64;
        let b = catalog::a_zero_branch(beta)[k % 2];
        out.push(LocusSample::new(beta, FRAC_PI_2, 0.0, b));
    }
    for k in 1..=n {
        let beta = FRAC_PI_4 + FRAC_PI_4 * k as f64 / n as f64;
        let a = catalog::b_zero_branch(beta).expect("b = 0 branch exists above pi/4");
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.push(LocusSample::new(beta, FRAC_PI_2, sign * a, 0.0));
    }
    out
}

/// `|centre - radius|` of the circle at `beta = pi/4`, where the `b = 0`
/// branch degenerates to the single point `a = 0`.
pub fn b_zero_boundary_gap() -> f64 {
    let (centre, radius) = catalog::circle_geometry(FRAC_PI_4);
    (centre - radius).abs()
}

fn locus(ctx: &Context, report: &mut SuiteReport) {
    let t = ctx.tolerance(Suite::Locus, tol::CIRCLE);
    let constructed = constructed_locus_samples();
    let mut acc = Accumulator::new("constructed");
    constructed.iter().for_each(|s| acc.push_value(s.circle_residual));
    report.equations.push(acc.finish(Some(tol::ALGEBRA)));
    let gap = b_zero_boundary_gap();
    report.checks.push(Check {
        name: "b_zero_boundary".into(),
        value: gap,
        threshold: tol::ALGEBRA,
        pass: gap <= tol::ALGEBRA,
        note: "at beta = pi/4 the b = 0 branch forces a = 0".into(),
    });

    let ok: Vec<&PointSample> = ctx.samples().iter().filter_map(|s| s.as_ref().ok()).collect();
    let intrinsic_flat = ctx.intrinsic().iter().all(|k| k.as_ref().is_ok_and(|k| k.abs() <= tol::FLAT));
    let spread = |f: fn(&PointSample) -> f64| {
        ok.iter().map(|s| f(s)).fold(f64::NEG_INFINITY, f64::max)
            - ok.iter().map(|s| f(s)).fold(f64::INFINITY, f64::min)
    };
    let applicable = ok.len() == ctx.grid.len()
        && ctx.verified_minimal()
        && intrinsic_flat
        && spread(|s| s.values.beta) <= CONSTANCY_TOL
        && spread(|s| s.values.alpha) <= CONSTANCY_TOL;
    if !applicable {
        report.warnings.push(
            "chart is not a flat minimal surface with constant angles at every grid point; circle locus not evaluated"
                .into(),
        );
        return;
    }
    let mut acc = Accumulator::new("chart");
    ok.iter().for_each(|s| acc.push_value(circle_locus(s.values.beta, s.values.a, s.values.b)));
    report.equations.push(acc.finish(t));
    let n = ok.len() as f64;
    let mean = |f: fn(&PointSample) -> f64| ok.iter().map(|s| f(s)).sum::<f64>() / n;
    report.samples.push(LocusSample::new(
        mean(|s| s.values.beta),
        mean(|s| s.values.alpha),
        mean(|s| s.values.a),
        mean(|s| s.values.b),
    ));
}

/// Typo-watch entries for curvature-type formulas that miss on a chart
/// verified to be minimal.
pub fn typo_watch(ctx: &Context, reports: &[SuiteReport]) -> Vec<TypoWatch> {
    let watched = [(Suite::Curvature, "k_contact.vs_intrinsic"), (Suite::Codazzi, "skew")];
    let mut out = Vec::new();
    for r in reports {
        for e in &r.equations {
            if !watched.contains(&(r.suite, e.equation.as_str())) || e.points_evaluated == 0 {
                continue;
            }
            if e.max_abs > tol::K_CROSS && ctx.verified_minimal() {
                let theta34 = ctx.max_theta34();
                let note = if theta34 > tol::PARALLEL {
                    format!(
                        "closed form disagrees on a verified minimal chart; e3 is not parallel there \
                         (max |theta_3^4| = {theta34:.3e})"
                    )
                } else {
                    "closed form disagrees on a verified minimal chart with parallel e3".into()
                };
                out.push(TypoWatch { suite: r.suite, equation: e.equation.clone(), max_abs: e.max_abs, note });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elimination_is_exact() {
        let s = elimination_check(1000, 1);
        assert_eq!(s.points_evaluated, 1000);
        assert!(s.max_abs <= 1e-12, "{}", s.max_abs);
    }

    #[test]
    fn constructed_samples_on_circle() {
        let s = constructed_locus_samples();
        assert_eq!(s.len(), 100);
        assert!(s.iter().all(|x| x.circle_residual.abs() <= 1e-12));
        assert!(s.iter().any(|x| x.a != 0.0));
        assert!(b_zero_boundary_gap() <= 1e-12);
    }
}
