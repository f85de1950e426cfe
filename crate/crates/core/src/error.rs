use thiserror::Error;

/// Errors shared across the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Valuation of the zero polynomial is undefined.
    #[error("the zero polynomial has no valuation")]
    ZeroPolynomial,

    /// Run decomposition and the kappa machinery need both letters.
    #[error("word {word:?} contains only one letter type")]
    SingleLetterWord { word: String },

    /// Clustered-trace and ensemble exponents must be >= 1.
    #[error("exponents must be >= 1, got n={n}, m={m}")]
    InvalidExponent { n: u32, m: u32 },

    /// An exhaustive search would exceed its configured cap.
    #[error("{what} = {actual} exceeds the cap of {limit}")]
    ComplexityGuard {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    /// Outside the hypothesis n, m >= min of the statement being checked.
    #[error("requires n, m >= {min}, got n={n}, m={m}")]
    RangeError { n: u32, m: u32, min: u32 },

    /// u^a v^b w^c has total (t,s)-degree a+2b+2c; it must match n+m.
    #[error("degree mismatch: a+2b+2c = {total} but n+m = {expected}")]
    DegreeMismatch { total: u32, expected: u32 },

    /// Two independent computation routes disagreed (an internal bug).
    #[error("independent routes disagree on {what}")]
    RouteDisagreement { what: String },

    /// Word string could not be parsed.
    #[error("invalid word at byte {pos}: {msg}")]
    WordParse { pos: usize, msg: String },

    /// Rational string could not be parsed.
    #[error("invalid rational number {input:?}")]
    NumberParse { input: String },

    /// Packed words carry at most 64 letters.
    #[error("word length {len} exceeds the supported maximum of 64")]
    WordTooLong { len: usize },

    /// Interval bounds for sign scans must satisfy 0 <= lo < hi.
    #[error("invalid scan interval: {msg}")]
    InvalidInterval { msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
