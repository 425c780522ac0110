//! Command-line front end: scenario and trace files, scoring, planning,
//! enumeration and grid rendering.

pub mod commands;
pub mod error;
pub mod files;
pub mod render;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
