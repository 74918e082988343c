use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use s5verify::{run_with, write_outputs, Cli, CliError, ExitStatus, Report};

fn summarize(report: &Report) {
    let mut err = std::io::stderr().lock();
    for s in &report.suites {
        let failed: Vec<&str> = s.equations.iter().filter(|e| !e.pass).map(|e| e.equation.as_str()).collect();
        let verdict = if s.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            err,
            "{:<11} {verdict}  {} equations, {} warnings",
            s.suite.name(),
            s.equations.len(),
            s.warnings.len()
        );
        if !failed.is_empty() {
            let _ = writeln!(err, "            failing: {}", failed.join(", "));
        }
    }
    for t in &report.typo_watch {
        let _ = writeln!(err, "typo-watch  {} {}: max {:.3e}", t.suite.name(), t.equation, t.max_abs);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = cli.into_config().and_then(|config| {
        // Flush partial results after every suite.
        let report = run_with(&config, |partial| {
            if config.report.is_some() || config.csv.is_some() {
                let _ = write_outputs(partial, &config);
            }
        })?;
        write_outputs(&report, &config)?;
        if config.report.is_none() {
            report
                .write_json(std::io::stdout().lock())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
        }
        Ok(report)
    });
    match outcome {
        Ok(report) => {
            summarize(&report);
            let status = report.exit_status();
            if status == ExitStatus::NumericalAbort {
                eprintln!("non-finite residuals outside guarded terms");
            }
            ExitCode::from(status.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
