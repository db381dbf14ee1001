use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no slope assigned to placeholder `{0}`")]
    MissingPlaceholder(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("characteristic polynomial routes disagree at coefficient a_{index}")]
    RouteMismatch { index: usize },

    #[error("hull route and tropical-polynomial route disagree: {0}")]
    DualMismatch(String),

    #[error("root finder did not converge after {iterations} iterations (max correction {max_step:e})")]
    NoConvergence { iterations: usize, max_step: f64 },

    #[error("loop too coarse or crossing degeneracy: minimum gap {min_gap:e} below threshold {threshold:e}")]
    LoopTooCoarse { min_gap: f64, threshold: f64 },

    #[error("tolerance ambiguity in rank sequence {ranks:?}; singular-value gaps {gaps:?}")]
    ToleranceAmbiguity { ranks: Vec<usize>, gaps: Vec<f64> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
