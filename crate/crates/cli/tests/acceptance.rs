//! Acceptance criteria. Prints one `[PASS]` / `[FAIL]` line per criterion
//! and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use s5frames::catalog::{self, HomogeneousTorusSpec};
use s5verify::suites::{
    b_zero_boundary_gap, constructed_locus_samples, elimination_check, ELIMINATION_SAMPLES, ELIMINATION_SEED,
};
use s5verify::{run, Report, RunConfig, Suite};

const GRID: usize = 64;
const POINTS: usize = GRID * GRID;

/// Mean curvature norm of the probe torus, `sqrt(sum r_j^2 (2 - k_j G^-1 k_j)^2)`
/// with flat metric `G`, evaluated by hand: `26 / 9`.
const PROBE_MINIMALITY: f64 = 26.0 / 9.0;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, detail: String::new() }
    }

    fn require(&mut self, ok: bool, what: impl AsRef<str>) {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(what.as_ref());
        if !ok {
            self.detail.push_str(" [x]");
            self.pass = false;
        }
    }
}

fn run_chart(chart: &str, suites: &[Suite]) -> Report {
    run(&RunConfig::new(chart).with_suites(suites)).unwrap_or_else(|e| panic!("{chart}: {e}"))
}

fn max_of(report: &Report, suite: &str, equation: &str) -> f64 {
    report.equation(suite, equation).unwrap_or_else(|| panic!("{suite}/{equation} missing")).max_abs
}

/// Equal-radius tori found minimal with constant contact angle strictly
/// between 0 and pi/2.
fn searched_tori() -> Vec<HomogeneousTorusSpec> {
    let freqs: Vec<[[i32; 2]; 3]> =
        [[1, 1], [1, -1], [-1, -1], [2, 1], [1, 2]].iter().map(|&k| [[1, 0], [0, 1], k]).collect();
    let r = (1.0f64 / 3.0).sqrt();
    catalog::minimal_torus_search(&[[r; 3]], &freqs, 1e-6)
        .into_iter()
        .filter(|h| h.sample.beta > 1e-3 && h.sample.beta < std::f64::consts::FRAC_PI_2 - 1e-3)
        .map(|h| h.spec)
        .collect()
}

fn frames() -> Outcome {
    let mut o = Outcome::new();
    for chart in ["legendrian-clifford", "geodesic-s2"] {
        let start = Instant::now();
        let r = run_chart(chart, &[Suite::Frames]);
        let secs = start.elapsed().as_secs_f64();
        let worst = r.suite("frames").unwrap().equations.iter().map(|e| e.max_abs).fold(0.0, f64::max);
        let complete = r.suite("frames").unwrap().equations.iter().all(|e| e.points_evaluated == POINTS);
        o.require(worst <= 1e-9 && complete && secs < 5.0, format!("{chart}: max {worst:.2e}, {secs:.2}s"));
    }
    o
}

fn connection(tori: &[String]) -> Outcome {
    let mut o = Outcome::new();
    let charts = ["legendrian-clifford".to_string(), "geodesic-s2".to_string()];
    for chart in charts.iter().chain(tori) {
        let r = run_chart(chart, &[Suite::Connection]);
        let s = r.suite("connection").unwrap();
        let anti = max_of(&r, "connection", "antisymmetry");
        let ids = s.equations.iter().filter(|e| e.equation.starts_with("theta")).map(|e| e.max_abs).fold(0.0, f64::max);
        let rich = s.checks.iter().find(|c| c.name == "richardson").unwrap();
        o.require(
            anti <= 1e-8 && ids <= 1e-5 && rich.value >= 4.0,
            format!("{chart}: antisym {anti:.1e}, identities {ids:.1e}, richardson x{:.1}", rich.value),
        );
    }
    o
}

fn curvature() -> Outcome {
    let mut o = Outcome::new();
    for (chart, known) in [("geodesic-s2", 1.0), ("legendrian-clifford", 0.0)] {
        let r = run_chart(chart, &[Suite::Curvature]);
        let k = max_of(&r, "curvature", "k_intrinsic.vs_known");
        let cross = r.equation("curvature", "k_frame.vs_intrinsic").unwrap();
        o.require(
            k <= 1e-5 && cross.max_abs <= 1e-3 && cross.pass,
            format!(
                "{chart}: |K-{known}| {k:.1e}, frame-route K {:.1e} ({} evaluated), typo-watch {}",
                cross.max_abs,
                cross.points_evaluated,
                r.typo_watch.len()
            ),
        );
    }
    o
}

fn minimality() -> Outcome {
    let mut o = Outcome::new();
    for chart in ["legendrian-clifford", "geodesic-s2"] {
        let m = max_of(&run_chart(chart, &[Suite::Connection]), "connection", "minimality");
        o.require(m <= 1e-6, format!("{chart}: {m:.1e}"));
    }
    let probe = catalog::nonminimal_probe_spec().to_string();
    let r = run_chart(&probe, &[Suite::Connection]);
    let m = r.equation("connection", "minimality").unwrap();
    o.require(
        m.max_abs > 1e-2 && (m.max_abs - PROBE_MINIMALITY).abs() <= 1e-6,
        format!("probe: {:.10} (oracle {PROBE_MINIMALITY:.10})", m.max_abs),
    );
    o
}

fn codazzi(tori: &[String]) -> Outcome {
    let mut o = Outcome::new();
    o.require(!tori.is_empty(), format!("{} searched tori with 0 < beta < pi/2", tori.len()));
    let charts = ["legendrian-clifford".to_string(), "geodesic-s2".to_string()];
    for chart in charts.iter().chain(tori) {
        let r = run_chart(chart, &[Suite::Codazzi]);
        let eqs = &r.suite("codazzi").unwrap().equations;
        let exact = eqs.len() == 4 && eqs.iter().all(|e| e.total() == POINTS && e.hard_errors == 0);
        let worst = eqs.iter().map(|e| e.max_abs).fold(0.0, f64::max);
        let evaluated: usize = eqs.iter().map(|e| e.points_evaluated).sum();
        o.require(exact && worst <= 1e-3, format!("{chart}: max {worst:.1e} over {evaluated} evaluations"));
    }
    o
}

fn reduced() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let s = elimination_check(ELIMINATION_SAMPLES, ELIMINATION_SEED);
    let secs = start.elapsed().as_secs_f64();
    o.require(
        s.points_evaluated == 10_000 && s.max_abs <= 1e-12 && secs < 1.0,
        format!("{} samples, max {:.1e}, {secs:.3}s", s.points_evaluated, s.max_abs),
    );
    o
}

fn locus() -> Outcome {
    let mut o = Outcome::new();
    let samples = constructed_locus_samples();
    let worst = samples.iter().map(|s| s.circle_residual.abs()).fold(0.0, f64::max);
    let a_branch = samples.iter().filter(|s| s.a == 0.0).count();
    o.require(
        samples.len() == 100 && worst <= 1e-12 && a_branch > 0 && a_branch < 100,
        format!("{} samples ({a_branch} on a = 0), max {worst:.1e}", samples.len()),
    );
    let gap = b_zero_boundary_gap();
    o.require(gap <= 1e-12, format!("b = 0 branch at beta = pi/4 forces a = 0 to {gap:.1e}"));
    o
}

fn determinism() -> Outcome {
    let mut o = Outcome::new();
    let config = RunConfig::new("tilted-s2");
    let first = run(&config).unwrap().json_bytes();
    let second = run(&config).unwrap().json_bytes();
    o.require(first == second, format!("repeat run identical ({} bytes)", first.len()));

    let with = |n| run(&RunConfig { workers: Some(n), ..config.clone() }).unwrap();
    let (one, four) = (with(1), with(4));
    let mut max_same = true;
    let mut mean_gap: f64 = 0.0;
    for (a, b) in one.suites.iter().zip(&four.suites) {
        for (x, y) in a.equations.iter().zip(&b.equations) {
            max_same &= x.max_abs == y.max_abs;
            mean_gap = mean_gap.max((x.mean_abs - y.mean_abs).abs());
        }
    }
    o.require(
        max_same && mean_gap <= 1e-15,
        format!("workers 1 vs 4: maxima equal {max_same}, mean gap {mean_gap:.1e}"),
    );
    o
}

fn main() -> ExitCode {
    let tori: Vec<String> = searched_tori().iter().map(ToString::to_string).collect();
    let criteria: [Criterion; 8] = [
        ("frame suite", Box::new(frames)),
        ("connection suite", Box::new(|| connection(&tori))),
        ("curvature suite", Box::new(curvature)),
        ("minimality", Box::new(minimality)),
        ("codazzi suite", Box::new(|| codazzi(&tori))),
        ("reduced elimination", Box::new(reduced)),
        ("circle locus", Box::new(locus)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {} {name}: {}", n + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
