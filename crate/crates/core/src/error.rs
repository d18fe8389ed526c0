use thiserror::Error;

/// Errors raised by the GA operators and fitness problems.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaeError {
    #[error("chromosome length must be at least {min}, got {len}")]
    LengthTooShort { len: usize, min: usize },
    #[error("chromosome length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid allele {0:?}; alleles must be 0 or 1")]
    InvalidAllele(char),
    #[error("population is empty")]
    EmptyPopulation,
    #[error("{name} must lie in [0, 1], got {value}")]
    RateOutOfRange { name: &'static str, value: f64 },
    #[error("population size must be at least 2, got {0}")]
    PopulationTooSmall(usize),
    #[error("generation count must be positive")]
    NoGenerations,
    #[error("edit amount must be at least 1")]
    ZeroEditAmount,
    #[error("editor pattern must not be empty")]
    EmptyPattern,
    #[error("editor pattern of length {pattern} does not fit chromosome of length {chromosome}")]
    PatternTooLong { pattern: usize, chromosome: usize },
    #[error("step size {0} does not divide [0, 1] evenly")]
    BadStepSize(f64),
    #[error("ODE state became non-finite at t = {t}")]
    Divergence { t: f64 },
    #[error("traces have mismatched lengths ({0} vs {1})")]
    TraceLengthMismatch(usize, usize),
    #[error("aggregation needs at least {min} runs, got {got}")]
    TooFewRuns { got: usize, min: usize },
}

pub type Result<T, E = GaeError> = std::result::Result<T, E>;
