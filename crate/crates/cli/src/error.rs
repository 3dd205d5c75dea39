use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or parameter values; exit status 2.
    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] supercoh::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Every point of a sweep failed; exit status 1.
    #[error("all {0} sweep points failed")]
    AllPointsFailed(usize),

    /// An oracle comparison exceeded its tolerance; exit status 1.
    #[error("oracle check failed: {0}")]
    OracleViolation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use supercoh::Error as E;
        match self {
            CliError::Invalid(_) => 2,
            CliError::Core(
                E::Domain(_) | E::AnnihilatedState(_) | E::InvalidOrder(_) | E::Truncation(_),
            ) => 2,
            CliError::Core(E::ImaginaryResidue { .. }) => 1,
            CliError::Io(_) | CliError::AllPointsFailed(_) | CliError::OracleViolation(_) => 1,
        }
    }
}
