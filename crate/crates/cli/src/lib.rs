//! Grid-based residual verification of adapted frames and structure
//! equations for charts from the `s5frames` catalog or JSON documents.

pub mod chart_file;
pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod suites;

pub use config::{ChartSource, Cli, RunConfig, SkipPolicy, Suite};
pub use error::CliError;
pub use report::Report;
pub use run::{run, run_with, write_outputs, ExitStatus};
