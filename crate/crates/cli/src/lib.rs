//! Front end for the engine: `.hcs` structure files, job execution and
//! reports.

pub mod error;
pub mod export;
pub mod format;
pub mod report;
pub mod resolve;
pub mod run;

pub use error::CliError;
pub use format::{parse_spec, serialize_spec, SpecDocument};
pub use run::{run_cli, Options, Outcome};
