use thiserror::Error;

/// Errors raised by value construction, measures, aggregation and the
/// decision pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value {value} is outside [0, 1]")]
    OutOfRange { value: f64 },

    #[error("non-finite value {value}")]
    NonFinite { value: f64 },

    #[error("inverted interval [{lo}, {hi}]")]
    InvertedInterval { lo: f64, hi: f64 },

    #[error("rung q must be at least 1, got {0}")]
    InvalidRung(u32),

    #[error("{value} is not a valid orthopair at q = {q} (t+^q + f+^q > 1)")]
    InvalidAtQ { value: String, q: u32 },

    #[error("no rung q in 1..={q_max} makes every value valid")]
    NoValidQ { q_max: u32 },

    #[error("q = {q} is invalid for entry {location}")]
    ExplicitQInvalid { q: u32, location: String },

    #[error("scalar {0} is negative")]
    NegativeScalar(f64),

    #[error("input list is empty")]
    EmptyInput,

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("ground set of size {0} is too large (at most {max})", max = crate::measure::MAX_GROUND_SET)]
    GroundSetTooLarge(usize),

    #[error("measure has no value for subset {0}")]
    MissingSubset(String),

    #[error("measure is not grounded: {0}")]
    NotGrounded(String),

    #[error(
        "measure is not monotone: mu({smaller}) = {smaller_value} > mu({larger}) = {larger_value}"
    )]
    NotMonotone {
        smaller: String,
        smaller_value: f64,
        larger: String,
        larger_value: f64,
    },

    #[error("subset {0} is not contained in the ground set")]
    BadSubset(String),

    #[error("measure is not additive: mu({subset}) = {value} but singletons sum to {sum}")]
    NotAdditive {
        subset: String,
        value: f64,
        sum: f64,
    },

    #[error("measure is not symmetric: subsets of size {size} have different values")]
    NotSymmetric { size: usize },

    #[error("weight {0} is negative")]
    NegativeWeight(f64),

    #[error("weights sum to {0}, expected 1")]
    WeightSumNotOne(f64),

    #[error("invalid BUM function: {0}")]
    InvalidBum(String),

    #[error("Choquet integrand value {0} is negative")]
    NegativeInput(f64),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("operator {operator} requires q = 1, got q = {q}")]
    BaselineRequiresQ1 { operator: &'static str, q: u32 },

    #[error("invalid problem: {0}")]
    Problem(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
