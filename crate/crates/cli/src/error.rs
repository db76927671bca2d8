use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed scenario file or bad argument.
    #[error("input error: {0}")]
    Input(String),

    #[error(transparent)]
    Model(#[from] rsmem_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use rsmem_core::Error as E;
        match self {
            CliError::Input(_) | CliError::Model(E::ConstraintViolated(_)) => 2,
            CliError::Model(E::ModelTooLarge { .. }) => 3,
            CliError::Model(E::NumericalFailure(_)) => 4,
            CliError::Io(_) => 1,
        }
    }
}
