use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,

    #[error("extension degree {degree} outside 1..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },

    #[error("field of order {p}^{d} exceeds the supported size")]
    FieldTooLarge { p: u32, d: u32 },

    #[error("field {field} has no Zech tables (order above the table threshold)")]
    NoTables { field: String },

    #[error("degree {sub} does not divide {degree}")]
    NotADivisor { sub: u32, degree: u32 },

    #[error("characteristic mismatch: {left} vs {right}")]
    CharacteristicMismatch { left: u32, right: u32 },

    #[error("{sub} is not a subfield of {sup}")]
    NotASubfield { sub: String, sup: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-rational trace numerator at t_index={t_index} over {field}")]
    NonRationalTrace { t_index: u64, field: String },

    #[error("non-rational value: {0}")]
    NonRational(String),

    #[error("field size {size} exceeds budget {budget}")]
    BudgetExceeded { size: u64, budget: u64 },

    #[error("cache file {path:?} is corrupt: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },

    #[error("group degree m={m} outside 5..=30")]
    GroupDegreeOutOfRange { m: u32 },

    #[error("invalid partition {0:?}")]
    InvalidPartition(Vec<u32>),

    #[error("identity mismatch for q={q} at monomial x^{i} y^{j}: left={left}, right={right}")]
    IdentityMismatch {
        q: u64,
        i: u32,
        j: u32,
        left: u64,
        right: u64,
    },

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that falsify a mathematical claim rather than reflect
    /// bad input or environment problems.
    pub fn is_falsification(&self) -> bool {
        matches!(
            self,
            Error::NonRationalTrace { .. }
                | Error::NonRational(_)
                | Error::IdentityMismatch { .. }
                | Error::CheckFailed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
