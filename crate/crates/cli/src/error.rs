use std::io;
use std::path::PathBuf;

/// Errors surfaced by the command-line layer, classified for exit codes:
/// config/schema problems exit 2, domain-constraint violations exit 3, and
/// I/O failures exit 4.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The config document does not conform to the schema; `path` is a
    /// JSON-pointer-style location inside the document.
    #[error("config error at {path}: {message}")]
    Schema { path: String, message: String },

    /// The invocation itself is unusable (missing `--config`, config shape
    /// incompatible with the subcommand, unsupported format combination).
    #[error("{0}")]
    Usage(String),

    /// A sweep grid whose values cannot form a grid.
    #[error("invalid sweep grid: {0}")]
    Grid(String),

    /// A measured profile does not cover the zone it is attached to.
    #[error(
        "measured profile {path} has {got} entries but the zone spans n = {needed} cycles"
    )]
    ProfileTooShort {
        path: PathBuf,
        got: usize,
        needed: usize,
    },

    /// A constraint or computation error from the core library.
    #[error(transparent)]
    Domain(#[from] runlaw::Error),

    /// Reading the config or writing the report failed.
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema { .. } | CliError::Usage(_) => 2,
            CliError::Domain(runlaw::Error::Io(_)) | CliError::Io(_) => 4,
            CliError::Domain(_) | CliError::Grid(_) | CliError::ProfileTooShort { .. } => 3,
        }
    }
}

pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.into(),
        message: message.into(),
    }
}
