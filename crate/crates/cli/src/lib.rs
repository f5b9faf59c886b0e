//! Command-line runner for the qcft checks: argument handling, configuration,
//! golden files and the check registry.

pub mod app;
pub mod checks;
pub mod config;
pub mod error;
pub mod golden;

pub use app::run;
pub use error::CliError;
