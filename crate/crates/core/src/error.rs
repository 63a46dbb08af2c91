use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("column {column} sums to {sum}, expected 1")]
    NonStochastic { column: usize, sum: String },

    #[error("negative entry {value} at row {row}, column {column}")]
    NegativeEntry { row: usize, column: usize, value: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vertex uses {used} distinct outputs but only {allowed} messages are available")]
    TooManyOutputsUsed { used: usize, allowed: usize },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("output map is not surjective onto {0} rows")]
    NotSurjective(usize),

    #[error("bad rescaling split: {0}")]
    BadSplit(String),

    #[error("inequality is not a facet of the polytope")]
    NotAFacet,

    #[error("inequality does not cut a ridge of the facet: {0}")]
    NotARidge(String),

    #[error("seed inequality is not a facet")]
    SeedNotFacet,

    #[error("no closed-form characterization covers n={n}, n'={n_prime}, d={d}")]
    RegimeNotCovered { n: usize, n_prime: usize, d: usize },

    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),

    #[error("negative discriminant {0}")]
    NegativeDiscriminant(String),

    #[error("replacement state is not a density matrix: {0}")]
    BadSigma(String),

    #[error("invalid quantum object: {0}")]
    InvalidQuantum(String),

    #[error("rationalization failed: {0}")]
    RationalizationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error documents.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonStochastic { .. } => "NonStochastic",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::TooManyOutputsUsed { .. } => "TooManyOutputsUsed",
            Error::ParameterOutOfRange(_) => "ParameterOutOfRange",
            Error::NotSurjective(_) => "NotSurjective",
            Error::BadSplit(_) => "BadSplit",
            Error::NotAFacet => "NotAFacet",
            Error::NotARidge(_) => "NotARidge",
            Error::SeedNotFacet => "SeedNotFacet",
            Error::RegimeNotCovered { .. } => "RegimeNotCovered",
            Error::ResourceBudget(_) => "ResourceBudget",
            Error::NegativeDiscriminant(_) => "NegativeDiscriminant",
            Error::BadSigma(_) => "BadSigma",
            Error::InvalidQuantum(_) => "InvalidQuantum",
            Error::RationalizationFailed(_) => "RationalizationFailed",
            Error::Parse(_) => "Parse",
        }
    }
}
