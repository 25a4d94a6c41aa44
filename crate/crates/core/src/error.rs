use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("character is not primitive (modulus {0})")]
    NonPrimitive(u64),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("contour passes within {distance:e} of a zero near t = {t}; retry with jitter")]
    ContourTooClose { t: f64, distance: f64 },

    #[error("winding number did not settle on an integer (phase/2pi = {0})")]
    NonIntegerWinding(f64),

    #[error("scan is incomplete: {found} ordinates located, contour count {expected}")]
    IncompleteScan { found: usize, expected: usize },

    #[error("scan has {0} zeros, at least 2 are needed")]
    TooFewZeros(usize),

    #[error("T = {t} lacks a margin of {needed} inside window [{lo}, {hi}]")]
    WindowMargin { t: f64, lo: f64, hi: f64, needed: f64 },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("hypothesis refuted by sampling: {0}")]
    HypothesisRefuted(String),

    #[error("conversion overflow: {0}")]
    Overflow(String),

    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn pole(s: num_complex::Complex64) -> Self {
        Error::Pole { re: s.re, im: s.im }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
