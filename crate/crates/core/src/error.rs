use thiserror::Error;

/// Errors produced by word arithmetic, VT coding and decoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} is not supported (expected 2..=256)")]
    InvalidAlphabet(usize),

    #[error("symbol {symbol} is not in the alphabet of size {q}")]
    SymbolOutOfRange { symbol: usize, q: usize },

    #[error("alphabet mismatch: q={left} vs q={right}")]
    AlphabetMismatch { left: u16, right: u16 },

    #[error("operation requires a binary alphabet, got q={0}")]
    UnsupportedAlphabet(u16),

    #[error("cannot parse {input:?} as a word over an alphabet of size {q}")]
    Parse { input: String, q: u16 },

    #[error("length {len} outside the allowed range {min}..={max}")]
    LengthOutOfRange { len: usize, min: usize, max: usize },

    #[error("invalid code parameters: n={n}, a={a} (need n >= 1 and a <= n)")]
    InvalidCode { n: usize, a: usize },

    #[error("{what} = {value} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("index {index} out of range for a code with {size} codewords")]
    IndexOutOfRange { index: u128, size: u128 },

    #[error("received word is not within one insertion/deletion of any codeword")]
    NotDecodable,

    #[error("received length {received} is more than {tau} away from code length {n}")]
    RadiusExceeded {
        received: usize,
        n: usize,
        tau: usize,
    },

    #[error("radius {tau} exceeds the configured maximum {max}")]
    RadiusTooLarge { tau: usize, max: usize },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid bound parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
