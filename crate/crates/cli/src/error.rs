use thiserror::Error;
use wrightlens::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Param(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("input: {0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
            CliError::Truncation(_) => 4,
            CliError::Input(_) => 5,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter { .. } | CoreError::Pole { .. } => {
                CliError::Param(e.to_string())
            }
            CoreError::Format { .. } => CliError::Input(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
