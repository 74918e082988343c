use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::time::Instant;

use s5frames::{catalog, ChartSpec};

use crate::chart_file::load_chart_spec;
use crate::config::{ChartSource, RunConfig};
use crate::error::CliError;
use crate::report::Report;
use crate::suites::{run_suite, typo_watch, Context};

/// Process exit status of a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    SuiteFailure = 1,
    ConfigError = 2,
    NumericalAbort = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl Report {
    pub fn exit_status(&self) -> ExitStatus {
        if self.non_finite() > 0 {
            ExitStatus::NumericalAbort
        } else if self.pass {
            ExitStatus::Pass
        } else {
            ExitStatus::SuiteFailure
        }
    }
}

pub fn resolve_chart(source: &ChartSource) -> Result<ChartSpec, CliError> {
    match source {
        ChartSource::Name(name) => {
            catalog::chart_by_name(name).map_err(|e| CliError::Config(format!("chart {name:?}: {e}")))
        }
        ChartSource::File(path) => load_chart_spec(path),
    }
}

/// Runs the enabled suites in order and assembles the report. `on_suite` is
/// called after each suite finishes, so partial results can be flushed.
pub fn run_with(config: &RunConfig, mut on_suite: impl FnMut(&Report) + Send) -> Result<Report, CliError> {
    config.validate()?;
    let chart = resolve_chart(&config.chart)?;
    let mut body = || {
        let ctx = Context::new(&chart, config);
        let mut report = Report {
            chart: chart.name.clone(),
            config: config.clone(),
            suites: Vec::new(),
            typo_watch: Vec::new(),
            pass: true,
        };
        for &suite in &config.suites {
            let start = Instant::now();
            let mut r = run_suite(&ctx, suite);
            if config.timings {
                r.wall_clock_s = Some(start.elapsed().as_secs_f64());
            }
            report.pass &= r.pass;
            report.suites.push(r);
            on_suite(&report);
        }
        report.typo_watch = typo_watch(&ctx, &report.suites);
        report
    };
    match config.workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("worker pool: {e}")))?;
            Ok(pool.install(body))
        }
        None => Ok(body()),
    }
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    run_with(config, |_| {})
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn write_outputs(report: &Report, config: &RunConfig) -> Result<(), CliError> {
    if let Some(path) = &config.report {
        report.write_json(create(path)?).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    if let Some(path) = &config.csv {
        report.write_csv(create(path)?)?;
    }
    Ok(())
}
