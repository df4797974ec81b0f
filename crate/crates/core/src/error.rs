use thiserror::Error;

/// Errors raised by the codec, the decoder front end and the simulation tools.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),

    #[error("expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range (0..{len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid bit sequence: {0}")]
    InvalidBits(String),

    #[error("malformed message")]
    Parse(#[from] ParseError),

    #[error("enumeration of {count} sequences exceeds the limit of {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },

    #[error("unsupported export format `{0}`")]
    UnsupportedFormat(String),

    #[error("export failed: {0}")]
    Export(String),
}

/// Failures while parsing a serialized synchronization message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("bad magic bytes")]
    BadMagic,

    #[error("unsupported version {0}")]
    UnsupportedVersion(u8),

    #[error("truncated input: need {expected} bytes, got {actual}")]
    Truncated { expected: usize, actual: usize },

    #[error("{0} unexpected trailing bytes")]
    TrailingBytes(usize),

    #[error("unknown linear code kind {0}")]
    UnknownCodeKind(u8),

    #[error("header describes invalid parameters: {0}")]
    InvalidHeader(String),

    #[error("syndrome field out of range: {0}")]
    InvalidField(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
