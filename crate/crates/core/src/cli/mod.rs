//! Scenario driver behind the `fracfloquet` binary: config ingestion,
//! pipelines, verification suite, point evaluation and file output.

pub mod config;
pub mod csv;
pub mod eval;
pub mod report;
pub mod run;
pub mod verify;

pub use config::{ModelConfig, Plan, PlannedModel, Scenario, SolveConfig, Tolerances};
pub use report::{Check, RunReport, SCHEMA_VERSION};
pub use run::{run_scenario, run_sweep};
pub use verify::{run_verification_suite, Tier, VerifyOptions};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const CHECK_FAILED: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("config parse error: {0}")]
    Parse(String),

    #[error("invalid config field `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error(transparent)]
    Numeric(#[from] crate::Error),
}

impl ScenarioError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Parse(_) | ScenarioError::Validation { .. } => exit::INVALID,
            ScenarioError::Io(_) | ScenarioError::Numeric(_) => exit::OTHER,
        }
    }
}

/// Exit code for a finished report.
pub fn report_exit_code(r: &RunReport) -> i32 {
    if r.error.is_some() && r.checks.iter().all(|c| c.passed) {
        exit::OTHER
    } else if r.passed {
        exit::OK
    } else {
        exit::CHECK_FAILED
    }
}
