//! File formats, JSON reports and the command-line front end for
//! `designforge-core`.

pub mod cli;
pub mod design_file;
pub mod error;
pub mod gens;
pub mod report;
pub mod resolver;

pub use error::{CliError, CliResult};
