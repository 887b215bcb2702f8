use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter index {index} out of range for alphabet of rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{what} would have size {size}, exceeding the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: usize,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("word {0} is not in the subgroup")]
    NotInSubgroup(String),

    #[error("support element {0} escapes the subgroup")]
    SupportEscapesSubgroup(String),

    #[error("augmentation is {0}, expected zero")]
    AugmentationNonzero(String),

    #[error("sum over coset {coset} (representative {representative}) is {sum}, expected zero")]
    CosetSumNonzero {
        coset: usize,
        representative: String,
        sum: String,
    },

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("weight cannot be evaluated: {0}")]
    UnsupportedWeight(String),

    #[error("factorization of length {given} is not geodesic (|u|_Y = {geodesic})")]
    NonGeodesic { given: usize, geodesic: usize },

    #[error("no Y-word of length at most {0} reaches the target")]
    SearchExhausted(usize),

    #[error("no separating quotient up to level {0}")]
    NoSeparation(usize),

    #[error("element is zero")]
    ZeroElement,

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
