//! Sweep configuration, invariant checks and report writers behind the CLI.

pub mod checks;
pub mod config;
pub mod export;
pub mod report;

pub use checks::{Context, Outcome, SamplePoint};
pub use config::{Axis, MomentumGrid, OutputFormat, SuiteConfig};
pub use report::{run_suite, ConformanceReport, ReportEntry, Status, Summary};
