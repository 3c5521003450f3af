//! File formats and report assembly for the `gaussfid` command-line tool.
//!
//! All numerics live in [`gaussfid_core`]; this crate only converts between
//! files, the core types and printable reports.

pub mod error;
pub mod io;
pub mod report;

pub use error::{CliError, ExitCode};
