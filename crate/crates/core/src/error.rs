use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph parameters: {0}")]
    InvalidParams(String),

    #[error("H({n},{q}) has {count} vertices, above the cap of {cap}")]
    TooManyVertices { n: usize, q: usize, count: u128, cap: u64 },

    #[error("word has length {got}, expected {expected}")]
    WrongLength { got: usize, expected: usize },

    #[error("digit {digit} at coordinate {coordinate} is not below q = {q}")]
    DigitOutOfRange { coordinate: usize, digit: usize, q: usize },

    #[error("vertex index {index} out of range (vertex count {count})")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("coordinate {i} out of range 1..={n}")]
    CoordinateOutOfRange { i: usize, n: usize },

    #[error("eigen index {m} out of range 0..={n}")]
    EigenIndexOutOfRange { m: usize, n: usize },

    #[error("functions live on different graphs: H({0},{1}) vs H({2},{3})")]
    ParamsMismatch(usize, usize, usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("outside the supported scope: {0}")]
    Unsupported(String),

    #[error("function is not additive: g_{{{i},{k},{m}}} takes different values at {t1} and {t2}")]
    NotAdditive {
        i: usize,
        k: usize,
        m: usize,
        t1: String,
        t2: String,
    },

    #[error("support {support} exceeds the classifiable maximum {max}")]
    SupportTooLarge { support: usize, max: usize },

    /// Raised when an additive function inside the trichotomy's hypothesis
    /// matches none of its three forms.
    #[error("no canonical form matched: {0}")]
    NoFormMatched(String),

    #[error("search grid has {size} points, above the cap of {cap}")]
    GridTooLarge { size: u128, cap: u64 },

    #[error("malformed function file: {0}")]
    Format(String),
}
