use std::fmt;

/// Failure of a subcommand, split by exit status: bad input exits with 1,
/// anything that went wrong while doing the work exits with 2.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Validation(_) => 1,
            Self::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Validation(msg) => write!(f, "invalid input: {msg}"),
            Self::Runtime(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl From<mscap::Error> for CliError {
    fn from(e: mscap::Error) -> Self {
        match e {
            mscap::Error::Io(_) => Self::Runtime(e.to_string()),
            other => Self::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
