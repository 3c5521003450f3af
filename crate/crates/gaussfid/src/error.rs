use gaussfid_core::{Error as CoreError, PhysicalityReport};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Ok = 0,
    Input = 2,
    Unphysical = 3,
    OracleMismatch = 4,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("channel is unphysical")]
    Unphysical(PhysicalityReport),
    #[error("{failures} of {total} oracle comparisons exceeded the tolerance")]
    OracleMismatch { failures: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Unphysical(_) => ExitCode::Unphysical,
            CliError::OracleMismatch { .. } => ExitCode::OracleMismatch,
            CliError::Core(
                CoreError::UnphysicalChannel(_)
                | CoreError::UnphysicalReconstruction(_)
                | CoreError::UnphysicalParameters(_)
                | CoreError::SubHeisenbergEllipse { .. },
            ) => ExitCode::Unphysical,
            _ => ExitCode::Input,
        }
    }

    /// The physicality report carried by the error, if any.
    pub fn report(&self) -> Option<&PhysicalityReport> {
        match self {
            CliError::Unphysical(r)
            | CliError::Core(CoreError::UnphysicalChannel(r))
            | CliError::Core(CoreError::UnphysicalReconstruction(r)) => Some(r),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
