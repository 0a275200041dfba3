use std::path::PathBuf;

use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("report serialization: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] designforge_core::Error),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
    #[error("golden mismatch: {0}")]
    Golden(String),
}

impl CliError {
    /// 2 for bad input, 3 for exhausted budgets, 4 for failed checks and
    /// internal inconsistencies.
    pub fn exit_code(&self) -> i32 {
        use designforge_core::Error as E;
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Core(E::BudgetExceeded(_) | E::OrbitOverflow { .. }) => 3,
            CliError::Core(E::InternalInconsistency(_))
            | CliError::ChecksFailed(_)
            | CliError::Golden(_)
            | CliError::Json(_) => 4,
            CliError::Core(_) => 2,
        }
    }
}

pub fn read_file(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

pub fn write_file(path: &std::path::Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}
