use alloc::string::String;

/// Errors raised by the evaluators and probes.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown distribution `{0}`")]
    UnknownDistribution(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("malformed specifier `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid parameter for {target}: {reason}")]
    InvalidParameter { target: String, reason: String },

    #[error("probability {0} is outside (0, 1)")]
    ProbabilityOutOfRange(f64),

    #[error("log-probability {0} is positive")]
    PositiveLogProb(f64),

    #[error("{0} lies outside the support")]
    OutsideSupport(f64),

    #[error("density vanishes at {0}")]
    ZeroDensity(f64),

    #[error("n = {n} is below the family minimum {min}")]
    SampleSizeTooSmall { n: u64, min: u64 },

    #[error("grid needs at least {min} points, got {got}")]
    GridTooShort { min: usize, got: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("resource guard: {cells} DP cells exceed the limit of 10^9")]
    ResourceGuard { cells: u128 },

    #[error("cancellation guard: condition number {0:e} exceeds 1e12")]
    Cancellation(f64),

    #[error("scaling rejected for this family: {0}")]
    ScalingRejected(String),

    #[error("scaling undefined at n = {n}: {reason}")]
    ScalingUndefined { n: u64, reason: String },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(target: &str, reason: &str) -> Error {
    Error::InvalidParameter {
        target: target.into(),
        reason: reason.into(),
    }
}
