use thiserror::Error;

/// Errors raised by pmf construction, distance evaluation, and bound checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight vector is empty")]
    EmptyWeights,

    #[error("weight at index {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },

    #[error("weight at index {index} is not finite")]
    NonFiniteWeight { index: usize },

    #[error("all weights are zero")]
    ZeroMass,

    #[error("weights sum to {sum}, expected 1 within 1e-9 (pass normalize to rescale)")]
    NotNormalized { sum: f64 },

    #[error("support [{lo}, {hi}] leaves the representable range ±2^52")]
    SupportOutOfRange { lo: i128, hi: i128 },

    #[error("parameter {name} = {value} out of range: {expected}")]
    Parameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// `μ(k) > 0` where `ν(k) = 0`; the divergence is `+∞` for every generator
    /// with superlinear growth (KL, χ²).
    #[error("support violation: mu({k}) > 0 but nu({k}) = 0, divergence is +inf")]
    SupportViolation { k: i64 },

    #[error("instance too large for {oracle}: {size} > {limit}")]
    InstanceTooLarge {
        oracle: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("malformed pmf document: {0}")]
    Parse(String),

    #[error("invalid family spec: {0}")]
    FamilySpec(String),

    #[error("invalid metric `{0}`")]
    Metric(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Parameter { name, value, expected }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
