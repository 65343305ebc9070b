use thiserror::Error;

/// Failures surfaced by the CLI, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// `--help` or `--version`; the text goes to stdout and the exit code is 0.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("computation failed: {0}")]
    Compute(#[from] lgsim_core::Error),
    #[error("invariant check failed: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Compute(_) | CliError::Invariant(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub(crate) fn from_clap(err: clap::Error) -> Self {
        use clap::error::ErrorKind;
        match err.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}
