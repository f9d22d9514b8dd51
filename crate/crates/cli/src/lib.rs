//! Command-line front end: spec files, the built-in catalog, command
//! dispatch and deterministic reports.

pub mod catalog;
pub mod commands;
pub mod error;
pub mod report;
pub mod spec;

pub use commands::{run, Outcome};
pub use error::CliError;
