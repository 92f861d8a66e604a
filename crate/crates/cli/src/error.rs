use thiserror::Error;

/// Failures of a CLI invocation, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line} column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error(transparent)]
    Engine(#[from] hopf_cyclic::Error),
}

impl CliError {
    /// 2 for malformed input, 3 for exhausted budgets, 1 for failed mathematics.
    pub fn exit_code(&self) -> u8 {
        use hopf_cyclic::Error as E;
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Resolution(_) => 2,
            CliError::Engine(E::Budget { .. }) => 3,
            CliError::Engine(E::SpecFormat(_) | E::Catalog { .. }) => 2,
            CliError::Engine(_) => 1,
        }
    }
}
