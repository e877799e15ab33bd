//! Verification suites behind the `qjoin` binary, with deterministic
//! reports.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{RunConfig, Suite};
pub use report::{render_text, write_json_atomic, Check, Report, SCHEMA};
pub use suites::run_suite;

use thiserror::Error;

/// Every executed check passed.
pub const EXIT_OK: i32 = 0;
/// At least one check failed.
pub const EXIT_FAILED: i32 = 1;
/// Bad arguments, configuration or I/O.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no checks selected")]
    NoChecks,
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
