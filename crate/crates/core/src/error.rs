use std::path::PathBuf;

use thiserror::Error;

/// Validation and domain errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("p must be at least 2 (got {0})")]
    PTooSmall(i64),
    #[error("q must satisfy 0 < q < p (got p = {p}, q = {q})")]
    QOutOfRange { p: u64, q: i64 },
    #[error("q is divisible by p (p = {p}, q = {q})")]
    QMultipleOfP { p: u64, q: i64 },
    #[error("p and q are not coprime: gcd({p}, {q}) = {gcd}")]
    NotCoprime { p: u64, q: i64, gcd: u64 },
    #[error("continued fraction is empty")]
    EmptyContinuedFraction,
    #[error("continued fraction entry {position} is {value}; entries must be positive")]
    NonPositiveEntry { position: usize, value: i64 },
    #[error("continued fraction {0} is not canonical (need n >= 2, a_1 >= 2 and a_n >= 2)")]
    NotCanonical(String),
    #[error("construction needs at least two twist regions (got n = {0})")]
    TooShort(usize),
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(String),
    #[error("replacement index {index} is out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("replacement index {0} lies on a boundary pillowcase")]
    BoundaryIndex(usize),
    #[error("replacement at index {index} needs a_{index} = 1 (got {twist})")]
    NotUnitTwist { index: usize, twist: u64 },
    #[error("replacement at index {index} is out of order (last processed index is {last})")]
    OutOfOrder { index: usize, last: usize },
    #[error("lower bound unavailable: K({p},{q}) is not hyperbolic")]
    NotHyperbolic { p: u64, q: u64 },
    #[error("covering degree must be at least 2 (got {0})")]
    DegreeTooSmall(u64),
    #[error("pretzel parameters need n >= 2 (got n = {0})")]
    PretzelTooShort(usize),
    #[error("pretzel parameter a_{position} = {value} violates the magnitude constraints")]
    PretzelMagnitude { position: usize, value: i64 },
    #[error("family length must be at least 2 (got {0})")]
    FamilyTooShort(usize),
    #[error("volume file {path}: {message}")]
    VolumeFile { path: PathBuf, message: String },
    #[error("volume file line {line}: {message}")]
    VolumeRow { line: u64, message: String },
    #[error(
        "volume file line {line}: duplicate entry for K({p},{q}) (first seen on line {first})"
    )]
    DuplicateVolume {
        line: u64,
        first: u64,
        p: u64,
        q: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
