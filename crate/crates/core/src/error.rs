use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A code, rate, or scenario parameter is outside its admissible range.
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    /// The enumerated state space exceeds the configured cap.
    #[error("model too large: {states} states exceeds cap of {cap}")]
    ModelTooLarge { states: usize, cap: usize },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}
