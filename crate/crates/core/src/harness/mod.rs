//! Scenario runner: configuration, bundled presets, CSV output, invariant
//! audits and comparison against the numerical integrator.

pub mod audit;
pub mod oracle;
pub mod presets;
pub mod runner;
pub mod scenario;

use std::path::{Path, PathBuf};

pub use audit::{audit_quartic, audit_trajectory, AuditReport, Check, QuarticCheck};
pub use oracle::{oracle_compare, OracleReport, ORACLE_TOL};
pub use runner::{run_scenario, simulate, write_outputs, RunSummary};
pub use scenario::{load_config, parse_config, preset_scenario, Flags, Mode, Overrides, Scenario, ScenarioSpec};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("scenario `{scenario}`: {source}")]
    Model {
        scenario: String,
        #[source]
        source: crate::Error,
    },

    #[error("scenario `{scenario}`: invariant breach: {}", breaches.join("; "))]
    Breach { scenario: String, breaches: Vec<String> },
}

impl HarnessError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.to_path_buf(), source }
    }

    pub(crate) fn model(scenario: &str, source: crate::Error) -> Self {
        HarnessError::Model { scenario: scenario.to_string(), source }
    }

    /// 2 when the scenario could not be set up as written, 1 when it ran
    /// into a numerical failure or broke an invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Io { .. } => 2,
            HarnessError::Model { source, .. } => match source {
                crate::Error::InvalidParams(_) | crate::Error::ManifoldOutOfRange { .. } => 2,
                _ => 1,
            },
            HarnessError::Breach { .. } => 1,
        }
    }
}
