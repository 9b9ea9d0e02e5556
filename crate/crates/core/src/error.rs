use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input (bad literal, box outside a diagram, mismatched sizes).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Power series with zero constant term passed to an inversion.
    #[error("series is not invertible (zero constant term)")]
    NonInvertible,
    /// A parameter value hit one of the finitely many bad points (vanishing hook factor,
    /// eigenvalue collision, singular elimination step). Redraw and retry.
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    /// A lower Pochhammer symbol vanished while building a series.
    #[error("pole: {0}")]
    Pole(String),
    /// An identity that should hold exactly did not.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that a fresh random parameter draw can fix.
    pub fn is_retryable(&self) -> bool {
        matches!(self, Error::Degenerate(_) | Error::Pole(_) | Error::NonInvertible)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
