//! Configuration, pipelines and report writers behind the `qhs` binary.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{Command, ConfigFile, Overrides, RunConfig};
pub use error::CliError;
pub use run::{run, Report, Row};
