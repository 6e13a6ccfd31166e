use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("line {line} is empty")]
    EmptyLine { line: usize },

    #[error("line {line} contains the reserved padding byte 0x00")]
    ReservedByte { line: usize },

    #[error("alphabet has {0} distinct symbols; at most 255 are supported")]
    AlphabetTooLarge(usize),

    #[error("symbol index {symbol} is outside the alphabet of size {sigma}")]
    SymbolOutOfRange { symbol: u8, sigma: usize },

    #[error("string of length {len} exceeds the walk capacity {max_len}")]
    StringTooLong { len: usize, max_len: usize },

    #[error("truncation length {len} is outside [1, {steps}]")]
    TruncationOutOfRange { len: usize, steps: usize },

    #[error("sample positions must be ascending and below {limit}")]
    BadPositions { limit: usize },

    #[error("signature has length {got}, expected {expected}")]
    SignatureLength { got: usize, expected: usize },

    #[error("modulus {0} must be a prime greater than 1000000 and below 2^63")]
    BadPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pair ({a}, {b}) has edit distance 0; distortion is undefined")]
    ZeroDistance { a: usize, b: usize },

    #[error("pair id {id} is out of range for a corpus of {n} strings")]
    PairOutOfRange { id: usize, n: usize },

    #[error("malformed pair line {line}: {reason}")]
    MalformedPairLine { line: usize, reason: String },
}
