use thiserror::Error;

/// Errors raised by the geometry, operator and classification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate frame: normalization denominator {denominator:e} for F{index} at s = {s}")]
    DegenerateFrame {
        index: usize,
        s: f64,
        denominator: f64,
    },
    #[error("singular point at (s, t, w) = ({s}, {t}, {w}): regularity margin {margin:e}")]
    SingularPoint { s: f64, t: f64, w: f64, margin: f64 },
    #[error("degenerate metric: |g| = {0:e}")]
    DegenerateMetric(f64),
    #[error("operation is only defined for the timelike-center family")]
    UnsupportedFamily,
    #[error("optimizer did not converge within {iterations} iterations")]
    OptimizerDidNotConverge { iterations: u64 },
    #[error("s = {s} outside curve range [{start}, {end}]")]
    OutOfRange { s: f64, start: f64, end: f64 },
    #[error("no usable grid points: all {excluded} points are singular")]
    EmptyGrid { excluded: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
