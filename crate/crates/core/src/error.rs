use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("sample needs at least two distinct values (got n = {n}, span = {span})")]
    EmptyOrDegenerateSample { n: usize, span: f64 },
    #[error("non-finite sample value {value} at index {index}")]
    NonFiniteValue { index: usize, value: f64 },
    #[error("grid needs at least 2 points, got {0}")]
    InvalidPointCount(usize),
    #[error("weights sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("condition width must be positive, got {0}")]
    NonPositiveSigma(f64),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },
    #[error("empirical average is zero for condition {0}")]
    ZeroEmpiricalAverage(usize),
    #[error("all weights are zero")]
    AllZeroWeights,
    #[error("smoothing window {window} exceeds series length {len}")]
    WindowTooLarge { window: usize, len: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid annealing schedule: {0}")]
    InvalidSchedule(String),
    #[error("input must be positive: {0}")]
    NonPositiveInput(&'static str),
    #[error("density at the center must be positive, got {0}")]
    NonPositiveDensity(f64),
    #[error("no admissible bandwidth: rho'' d^3 = {0} is at or beyond the asymptote 24")]
    NoSolution(f64),
    #[error("x = {0} is outside the support [0, 1]")]
    OutOfSupport(f64),
    #[error("invalid sample count {0}")]
    InvalidCount(usize),
    #[error("finite-difference stencil [{lo}, {hi}] leaves the support")]
    StencilOutOfSupport { lo: f64, hi: f64 },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("io failure: {0}")]
    Io(String),
    #[error("nothing to write")]
    NoData,
}

impl Error {
    /// Stable variant name for machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyOrDegenerateSample { .. } => "EmptyOrDegenerateSample",
            Error::NonFiniteValue { .. } => "NonFiniteValue",
            Error::InvalidPointCount(_) => "InvalidPointCount",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::NonPositiveSigma(_) => "NonPositiveSigma",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NegativeWeight { .. } => "NegativeWeight",
            Error::ZeroEmpiricalAverage(_) => "ZeroEmpiricalAverage",
            Error::AllZeroWeights => "AllZeroWeights",
            Error::WindowTooLarge { .. } => "WindowTooLarge",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidSchedule(_) => "InvalidSchedule",
            Error::NonPositiveInput(_) => "NonPositiveInput",
            Error::NonPositiveDensity(_) => "NonPositiveDensity",
            Error::NoSolution(_) => "NoSolution",
            Error::OutOfSupport(_) => "OutOfSupport",
            Error::InvalidCount(_) => "InvalidCount",
            Error::StencilOutOfSupport { .. } => "StencilOutOfSupport",
            Error::Parse { .. } => "Parse",
            Error::Io(_) => "IoFailure",
            Error::NoData => "NoData",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
