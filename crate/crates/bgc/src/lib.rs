//! Command-line front end for `bgc-core`: bound reports, figure data,
//! the verification suite and the coherent-information oracle.

// negated comparisons such as `!(x > 0.0)` also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod figure;
pub mod format;
pub mod report;

/// Environment variable naming the default output directory of `figure`.
pub const OUTPUT_DIR_ENV: &str = "BGC_OUTPUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] bgc_core::Error),
    #[error("bad grid: {0}")]
    Grid(String),
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Every error is a usage error (exit code 2); 1 is reserved for failed checks.
    pub fn exit_code(&self) -> u8 {
        2
    }
}
