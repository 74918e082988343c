use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Suite {
    Frames,
    Connection,
    Curvature,
    Laplacian,
    Codazzi,
    Reduced,
    Parallel,
    Locus,
    All,
}

impl Suite {
    /// Execution order.
    pub const ORDERED: [Suite; 8] = [
        Suite::Frames,
        Suite::Connection,
        Suite::Curvature,
        Suite::Laplacian,
        Suite::Codazzi,
        Suite::Reduced,
        Suite::Parallel,
        Suite::Locus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Frames => "frames",
            Suite::Connection => "connection",
            Suite::Curvature => "curvature",
            Suite::Laplacian => "laplacian",
            Suite::Codazzi => "codazzi",
            Suite::Reduced => "reduced",
            Suite::Parallel => "parallel",
            Suite::Locus => "locus",
            Suite::All => "all",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        <Suite as ValueEnum>::from_str(s, false).ok()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SkipPolicy {
    /// Skipped points are reported as warnings.
    #[default]
    Warn,
    /// Any skipped point fails its suite.
    Fail,
}

impl SkipPolicy {
    pub fn name(self) -> &'static str {
        match self {
            SkipPolicy::Warn => "warn",
            SkipPolicy::Fail => "fail",
        }
    }
}

/// Where the chart comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ChartSource {
    /// Catalog name or `torus:` string.
    Name(String),
    /// JSON chart document.
    File(PathBuf),
}

impl fmt::Display for ChartSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartSource::Name(n) => f.write_str(n),
            ChartSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub chart: ChartSource,
    pub grid_n_u: usize,
    pub grid_n_v: usize,
    pub h: f64,
    /// Enabled suites in execution order.
    pub suites: Vec<Suite>,
    /// Per-suite tolerance overrides.
    pub tolerances: BTreeMap<Suite, f64>,
    pub skip_policy: SkipPolicy,
    pub workers: Option<usize>,
    /// Include wall-clock times in the report (makes it run-dependent).
    pub timings: bool,
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

pub const MIN_GRID: usize = 8;
pub const DEFAULT_H: f64 = 1e-3;

impl RunConfig {
    /// Defaults for a named chart: 64x64 grid, every suite.
    pub fn new(chart: impl Into<String>) -> Self {
        RunConfig {
            chart: ChartSource::Name(chart.into()),
            grid_n_u: 64,
            grid_n_v: 64,
            h: DEFAULT_H,
            suites: Suite::ORDERED.to_vec(),
            tolerances: BTreeMap::new(),
            skip_policy: SkipPolicy::Warn,
            workers: None,
            timings: false,
            report: None,
            csv: None,
        }
    }

    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = normalize_suites(suites);
        self
    }

    pub fn with_grid(mut self, nu: usize, nv: usize) -> Self {
        self.grid_n_u = nu;
        self.grid_n_v = nv;
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.grid_n_u < MIN_GRID || self.grid_n_v < MIN_GRID {
            return Err(CliError::Config(format!(
                "grid {}x{} is below the minimum {MIN_GRID}x{MIN_GRID}",
                self.grid_n_u, self.grid_n_v
            )));
        }
        if !(self.h > 1e-8 && self.h < 1e-1) {
            return Err(CliError::Config(format!("step h = {} is outside (1e-8, 1e-1)", self.h)));
        }
        if self.suites.is_empty() {
            return Err(CliError::Config("no suites selected".into()));
        }
        if let Some(t) = self.tolerances.values().find(|t| !(t.is_finite() && **t > 0.0)) {
            return Err(CliError::Config(format!("tolerance {t} must be positive")));
        }
        if self.workers == Some(0) {
            return Err(CliError::Config("--workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Expands `all`, removes duplicates and sorts into execution order.
pub fn normalize_suites(suites: &[Suite]) -> Vec<Suite> {
    if suites.contains(&Suite::All) {
        return Suite::ORDERED.to_vec();
    }
    Suite::ORDERED.into_iter().filter(|s| suites.contains(s)).collect()
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected NxM, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((n(a)?, n(b)?))
}

fn parse_tolerance(s: &str) -> Result<(Suite, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected suite=value, got {s:?}"))?;
    let suite = Suite::from_name(name.trim()).ok_or_else(|| format!("unknown suite {name:?}"))?;
    if suite == Suite::All {
        return Err("tolerances are set per suite".into());
    }
    let value = value.trim().parse::<f64>().map_err(|e| format!("{value:?}: {e}"))?;
    Ok((suite, value))
}

/// Residual verifier for adapted frames and structure equations of surfaces
/// in the unit 5-sphere.
#[derive(Debug, Parser)]
#[command(name = "s5verify", version)]
pub struct Cli {
    /// Catalog name (legendrian-clifford, geodesic-s2, tilted-s2,
    /// s3-clifford, torus:r1,r2,r3;m1,n1;m2,n2;m3,n3) or JSON chart file.
    #[arg(long)]
    pub chart: String,

    /// Sampling grid as NxM.
    #[arg(long, default_value = "64x64", value_parser = parse_grid)]
    pub grid: (usize, usize),

    /// Finite-difference step.
    #[arg(long, default_value_t = DEFAULT_H)]
    pub h: f64,

    /// Comma-separated suites to run.
    #[arg(long = "suite", value_enum, value_delimiter = ',', default_value = "all")]
    pub suites: Vec<Suite>,

    /// Tolerance override as suite=value; repeatable.
    #[arg(long = "tol", value_parser = parse_tolerance)]
    pub tolerances: Vec<(Suite, f64)>,

    /// JSON report path (stdout when absent).
    #[arg(long)]
    pub report: Option<PathBuf>,

    /// CSV report path.
    #[arg(long)]
    pub csv: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = SkipPolicy::Warn)]
    pub skip_policy: SkipPolicy,

    /// Worker threads for grid sweeps.
    #[arg(long)]
    pub workers: Option<usize>,

    /// Record wall-clock time per suite in the report.
    #[arg(long)]
    pub timings: bool,
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let chart = if looks_like_path(&self.chart) {
            ChartSource::File(PathBuf::from(&self.chart))
        } else {
            ChartSource::Name(self.chart)
        };
        let config = RunConfig {
            chart,
            grid_n_u: self.grid.0,
            grid_n_v: self.grid.1,
            h: self.h,
            suites: normalize_suites(&self.suites),
            tolerances: self.tolerances.into_iter().collect(),
            skip_policy: self.skip_policy,
            workers: self.workers,
            timings: self.timings,
            report: self.report,
            csv: self.csv,
        };
        config.validate()?;
        Ok(config)
    }
}

fn looks_like_path(s: &str) -> bool {
    !s.starts_with("torus:") && (s.ends_with(".json") || s.contains('/') || std::path::Path::new(s).is_file())
}
