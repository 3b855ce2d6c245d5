//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid: {0}")]
    Grid(String),

    #[error("signal length {got} does not match grid sample count {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error(
        "nonlinear phase per step {phase:.3e} rad exceeds bound {bound:.3e}; \
         reduce the step or enable auto-refine"
    )]
    StepTooCoarse { phase: f64, bound: f64 },

    #[error("realization {index}: {source}")]
    Realization {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("quartet ({l},{m},{n},{k}) violates frequency matching l+m=n+k")]
    FrequencyMismatch { l: i64, m: i64, n: i64, k: i64 },

    #[error("integer overflow while evaluating the dispersion relation")]
    Overflow,

    #[error("mode index {k} outside band |k| <= {bound}")]
    OutOfBand { k: i64, bound: i64 },

    #[error("moment order {0} unsupported (expected 2, 4 or 6)")]
    UnsupportedOrder(usize),

    #[error("symbol moments are not Cauchy-Schwarz consistent: {0}")]
    InconsistentMoments(String),

    #[error("pulse basis orthonormality residual {0:.3e} exceeds 1e-10")]
    NotOrthonormal(f64),

    #[error("ratio undefined for the zero signal")]
    ZeroSignal,

    #[error("link: {0}")]
    Link(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
