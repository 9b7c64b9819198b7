//! Command-line front end for the `pythaproof-core` kernel.
//!
//! Exit codes: 0 when every verdict passes, 1 on a failed verdict, 2 on a
//! usage, configuration or catalog load error.

pub mod catalog;
pub mod commands;
pub mod config;
pub mod json;
pub mod sweep;

pub use commands::{run, Outcome, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
pub use config::{Cli, Command, Format};
