//! Scenario runner behind the `talbot-gkp` binary: declarative configs in,
//! long-format CSV and JSON artifacts out.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{validate, Diagnostic, Resolved, RunConfig, Scenario, Severity, Value};
pub use error::CliError;
pub use run::{run, RunReport};
