use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("base {0} is not a prime number")]
    NotPrime(u64),
    #[error("{base}^{m} exceeds the supported numerator width (2^63)")]
    Overflow { base: u64, m: u32 },
    #[error("matrix entry {entry} at ({row}, {col}) is not reduced modulo {base}")]
    InvalidEntry {
        row: usize,
        col: usize,
        entry: u64,
        base: u64,
    },
    #[error("expected {expected} points, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("negative radicand {0:e} indicates an accumulation failure")]
    NegativeRadicand(f64),
    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),
    #[error("unknown matrix recipe `{0}`")]
    UnknownRecipe(String),
    #[error("measure `{0}` needs unit-square pre-images")]
    MissingPreimages(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
