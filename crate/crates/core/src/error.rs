use std::io;

use thiserror::Error;

/// Errors produced while building, encoding, loading or querying an index.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("symbol {0} is not part of the grammar")]
    UnknownSymbol(u32),
    #[error("window {from}+{len} exceeds expansion length {available}")]
    OutOfRange { from: u64, len: u64, available: u64 },
    #[error("value {0} cannot be encoded")]
    InvalidValue(u64),
    #[error("value {0} does not fit the target width")]
    Overflow(u64),
    #[error("right-hand side of rule {0} is not bitonic")]
    NotBitonic(u32),
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("unsupported index format version {0}")]
    VersionMismatch(u16),
    #[error("unknown store encoding {0}")]
    UnknownEncoding(u8),
    #[error("stream ended unexpectedly")]
    TruncatedStream,
    #[error("checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("malformed index: {0}")]
    Malformed(&'static str),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
