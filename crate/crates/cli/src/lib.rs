//! Command-line front end: configuration, report types and JSON documents.

pub mod config;
pub mod run;
pub mod serial;

pub use config::{Cli, RunConfig, UsageError};
pub use run::{run, Output, Report, RunError};
