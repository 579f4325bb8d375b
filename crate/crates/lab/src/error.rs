use std::path::PathBuf;

/// Failure classes of the runner, one per process exit code.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl LabError {
    pub fn validation(field: &str, message: impl Into<String>) -> Self {
        LabError::Validation { field: field.to_owned(), message: message.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Usage(_) => 2,
            LabError::Validation { .. } => 3,
            LabError::Io { .. } => 4,
            LabError::Numerical(_) => 5,
        }
    }
}

impl From<krylov_core::Error> for LabError {
    fn from(e: krylov_core::Error) -> Self {
        use krylov_core::Error as E;
        match e {
            E::InvalidArgument(m) | E::ResourceLimit(m) => {
                LabError::Validation { field: "parameters".into(), message: m }
            }
            E::DegenerateInput(m) | E::NumericalFailure(m) => LabError::Numerical(m),
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
