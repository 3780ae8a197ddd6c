use thiserror::Error;

/// Coarse failure category, used by front ends that map errors to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-domain input.
    Domain,
    /// Invalid configuration of an oracle or grid.
    Config,
    /// The estimator itself cannot be formed (dead support, degenerate data).
    Estimation,
    /// A combinatorial guard was exceeded.
    Size,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("sample is empty")]
    EmptySample,
    #[error("point {position} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        position: usize,
        expected: usize,
        found: usize,
    },
    #[error("sample point {position} is {value}, not an alphabet index in [0, {alphabet})")]
    SymbolOutOfRange {
        position: usize,
        value: f64,
        alphabet: usize,
    },
    #[error("alphabet sizes differ: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("alphabet must have at least two symbols, got {0}")]
    AlphabetTooSmall(usize),
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("invalid probability {value} at index {index}")]
    InvalidProbability { index: usize, value: f64 },
    #[error("count vector sums to zero")]
    EmptyCounts,
    #[error("model set is empty")]
    EmptyModelSet,
    #[error("duplicate model id `{0}`")]
    DuplicateModelId(String),
    #[error("operation `{0}` requires a finite model set")]
    FiniteSetRequired(&'static str),
    #[error("quadrature weight at node {index} is {value}, must be positive and finite")]
    InvalidQuadWeight { index: usize, value: f64 },
    #[error("beta must be finite and >= 0, got {0}")]
    InvalidBeta(f64),
    #[error("log-weight at index {index} is not a number or +inf")]
    NonFiniteLogWeight { index: usize },
    #[error("{context}: lengths differ ({left} vs {right})")]
    LengthMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },
    #[error("model `{0}` has no sampler")]
    MissingSampler(String),
    #[error("empty support: every model has zero density somewhere on the sample")]
    EmptySupport,
    #[error("degenerate sample: variance is zero")]
    DegenerateSample,
    #[error("variance must be finite and >= 0, got {0}")]
    InvalidVariance(f64),
    #[error("component offset must be finite and > 0, got {0}")]
    InvalidOffset(f64),
    #[error("sample size {n} unsupported here, need at least {min}")]
    UnsupportedSampleSize { n: usize, min: usize },
    #[error("model at index {0} is not strictly positive on the alphabet")]
    NonPositiveModel(usize),
    #[error("enumeration of {combinations} count vectors exceeds the guard of {limit}")]
    EnumerationTooLarge { combinations: u128, limit: u128 },
    #[error("{axis} axis has {nodes} nodes, need at least 2")]
    GridTooCoarse { axis: &'static str, nodes: usize },
    #[error("need at least {min} replicates, got {got}")]
    TooFewReplicates { got: usize, min: usize },
    #[error("evaluation draw count must be at least 1")]
    InvalidDrawCount,
    #[error("all {0} replicates failed with non-finite log-density terms")]
    AllReplicatesFailed(usize),
    #[error("beta grid does not contain the sample size {0}")]
    BetaGridMissingSampleSize(f64),
    #[error("iteration count must be at least 1")]
    InvalidIterationCount,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            EmptySample
            | DimensionMismatch { .. }
            | SymbolOutOfRange { .. }
            | AlphabetMismatch { .. }
            | AlphabetTooSmall(_)
            | NotNormalized(_)
            | InvalidProbability { .. }
            | EmptyCounts
            | EmptyModelSet
            | DuplicateModelId(_)
            | FiniteSetRequired(_)
            | InvalidQuadWeight { .. }
            | InvalidBeta(_)
            | NonFiniteLogWeight { .. }
            | LengthMismatch { .. }
            | MissingSampler(_)
            | InvalidVariance(_)
            | InvalidOffset(_)
            | TooFewReplicates { .. }
            | InvalidDrawCount
            | BetaGridMissingSampleSize(_)
            | InvalidIterationCount => ErrorKind::Domain,
            GridTooCoarse { .. } => ErrorKind::Config,
            EmptySupport
            | DegenerateSample
            | UnsupportedSampleSize { .. }
            | NonPositiveModel(_)
            | AllReplicatesFailed(_) => ErrorKind::Estimation,
            EnumerationTooLarge { .. } => ErrorKind::Size,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
