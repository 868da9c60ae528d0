//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M†| entry is {asymmetry:.3e}")]
    NonHermitian { asymmetry: f64 },

    #[error("matrix is not positive semi-definite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("matrix has non-unit trace: trace = {trace:.12}")]
    NonUnitTrace { trace: f64 },

    #[error("state is not diagonal in the Bell-like basis: largest off-family element {max_off_family:.3e}")]
    NotFamilyDiagonal { max_off_family: f64 },

    #[error("weight {name} = {value:.3e} is negative beyond tolerance")]
    NegativeWeight { name: &'static str, value: f64 },

    #[error("weights sum to {sum:.12}, expected 1")]
    WeightSum { sum: f64 },

    #[error("alpha = {alpha} is outside [-1, 1]")]
    AlphaOutOfRange { alpha: f64 },

    #[error("|alpha| = 1 is outside the closed-form propagator's domain; use integrate_rk4")]
    AlphaAtClosedFormBoundary,

    #[error("time t = {t} must be nonnegative")]
    NegativeTime { t: f64 },

    #[error("step size dt = {dt} must be positive")]
    NonPositiveStep { dt: f64 },

    #[error("integration would need {steps} steps; limit is {limit}")]
    StepCountOverflow { steps: u64, limit: u64 },

    #[error("parameter {name} = {value} is outside [{min}, {max}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("case id {id} is out of range 1..=5")]
    InvalidCase { id: u8 },

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("malformed record file {path}: {reason}")]
    MalformedCsv { path: String, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
