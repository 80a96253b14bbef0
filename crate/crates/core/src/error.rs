use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation failed for {subject}: {message}")]
    Validation { subject: String, message: String },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("coefficient of variation is undefined for a zero mean")]
    UndefinedCv,

    #[error("ASI is undefined when mean accuracy + CV = 0")]
    UndefinedAsi,

    #[error("relative delta is undefined: baseline {0} is zero")]
    UndefinedDelta(&'static str),

    #[error("unsupported image format in {path}: {message}")]
    ImageFormat { path: PathBuf, message: String },

    #[error("checksum mismatch for {0}")]
    ChecksumMismatch(PathBuf),

    #[error("classifier failed on {path}: {message}")]
    Adapter { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn validation(subject: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            subject: subject.into(),
            message: message.into(),
        }
    }

    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit status for this error: 2 for I/O failures, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Io { .. } => 2,
            _ => 1,
        }
    }
}
