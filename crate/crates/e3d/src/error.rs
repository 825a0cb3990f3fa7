use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A value that must be finite was NaN or infinite.
    #[error("non-finite {what}")]
    NonFinite { what: &'static str },

    /// A parameter violated its documented range.
    #[error("invalid {name}: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// A probability vector had a negative entry or did not sum to one.
    #[error("probabilities must be nonnegative and sum to 1 (sum was {sum})")]
    InvalidSimplex { sum: f64 },

    /// A per-slot distribution list had the wrong length.
    #[error("expected {expected} slot distributions, got {got}")]
    SlotCount { expected: usize, got: usize },

    /// A state id outside the grid.
    #[error("state id {0} out of range")]
    BadStateId(usize),

    /// An action symbol other than E, S, W, N.
    #[error("unknown action symbol {0:?}")]
    BadActionSymbol(char),

    /// An action string whose length is not the sequence length.
    #[error("action sequence must contain exactly {expected} moves, got {got}")]
    BadSequenceLength { expected: usize, got: usize },

    /// An unrecognized algorithm name.
    #[error("unknown algorithm {0:?} (expected e3d, uniform, or egreedy)")]
    BadAlgorithm(String),

    /// An unrecognized task name.
    #[error("unknown task {0:?} (expected explore or reward)")]
    BadTask(String),

    /// The drive term divides by the inverse temperature, so beta = 0 is rejected.
    #[error("inverse temperature must be positive for this operation")]
    ZeroBeta,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
