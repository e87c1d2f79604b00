//! File formats and the command implementations behind the `realseq` binary.

pub mod bfile;
pub mod commands;
pub mod cycles;
pub mod error;
pub mod report;

pub use error::{CliError, FormatError};
