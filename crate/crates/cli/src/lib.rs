//! IO companion for the state property system toolkit: the JSON instance
//! interchange format, run reports with deterministic rendering, DOT
//! exports, and witness re-evaluation.

pub mod dot;
pub mod format;
pub mod run;
pub mod witness;

/// Error carrying the process exit code policy:
/// 0 success, 1 structural invalidity, 2 parse error, 3 budget abort.
#[derive(Debug)]
pub enum CliError {
    /// The document does not parse as the interchange format (exit 2).
    Parse(String),
    /// Names or shape do not assemble into a system (exit 1).
    Structural(String),
    /// An exhaustive enumeration would exceed the budget (exit 3).
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Structural(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {}", m),
            CliError::Structural(m) => write!(f, "structural error: {}", m),
            CliError::Budget(m) => write!(f, "budget exceeded: {}", m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<spslab_core::BudgetExceeded> for CliError {
    fn from(e: spslab_core::BudgetExceeded) -> Self {
        CliError::Budget(e.to_string())
    }
}
