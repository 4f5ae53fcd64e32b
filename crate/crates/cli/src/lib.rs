//! Library half of the `f1ci` command-line tool: output records, sweep
//! configuration and the subcommand implementations.

pub mod commands;
pub mod config;
pub mod record;

pub use commands::{exit, CliError};
pub use config::{ConfigError, SweepConfig, DEFAULT_CONFIG};
pub use record::{render, Format, Record, Value};
