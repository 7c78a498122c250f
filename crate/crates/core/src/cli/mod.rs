//! Configuration files, seeded sampling, the boundary census and the
//! verification suites behind the command-line tool.

mod boundary;
mod config;
mod random;
mod suites;

use thiserror::Error;

pub use boundary::{boundary_divisors, Census, DivisorLabel};
pub use config::{
    config_to_json, field_to_json, line_points_to_json, parse_config, parse_field_arg, plane_points_to_json,
    serialize_config, ConfigFile,
};
pub use random::{mix, random_generic_config, sample_collinear, sample_generic, SplitMix64, MAX_RETRIES};
pub use suites::{detect_divisors, report_text, run_suite, Failure, Report, Suite, TrialPlan, VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{context}: {message}")]
    Parse { context: String, message: String },
    #[error("no generic configuration after {0} attempts")]
    ExhaustedRetries(usize),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Domain(String),
}
