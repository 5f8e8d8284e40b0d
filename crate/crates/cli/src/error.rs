use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("infeasible problem: {0}")]
    Infeasible(String),
    #[error("run failed: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Runtime(_) => 4,
        }
    }
}

/// Input problems found while loading are config errors; problems found
/// while running are runtime failures.
pub(crate) fn load_error(e: eaco_core::Error) -> CliError {
    match e {
        eaco_core::Error::Infeasible(m) => CliError::Infeasible(m),
        other => CliError::Config(other.to_string()),
    }
}

pub(crate) fn run_error(e: eaco_core::Error) -> CliError {
    match e {
        eaco_core::Error::Infeasible(m) => CliError::Infeasible(m),
        other => CliError::Runtime(other.to_string()),
    }
}

pub(crate) fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Runtime(format!("{}: {e}", path.display()))
}

pub type CliResult<T> = std::result::Result<T, CliError>;
