use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("degenerate torus parameters after {attempts} draws: {message}")]
    Degenerate { attempts: u32, message: String },
    #[error(transparent)]
    Core(qhs_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("output error: {0}")]
    Output(String),
}

impl From<qhs_core::Error> for CliError {
    fn from(e: qhs_core::Error) -> Self {
        match e {
            qhs_core::Error::Invalid(m) | qhs_core::Error::Descriptor(m) => CliError::Config(m),
            qhs_core::Error::DegenerateParameters(m) => CliError::Degenerate { attempts: 1, message: m },
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Degenerate { .. } => 4,
            CliError::Check(_) | CliError::Core(_) => 3,
            CliError::Io(_) | CliError::Output(_) => 1,
        }
    }
}
