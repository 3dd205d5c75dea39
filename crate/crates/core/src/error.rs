use thiserror::Error;

/// Errors raised by state construction, moment evaluation and witness assembly.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An operator sequence left the zero vector (e.g. subtracting a photon from vacuum).
    #[error("annihilated state: {0}")]
    AnnihilatedState(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The requested operation needs more Fock levels than the vector carries or the budget allows.
    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    /// A quantity that must be real came out with a sizeable imaginary part.
    #[error("internal consistency: imaginary residue {residue:e} in {what}")]
    ImaginaryResidue { what: String, residue: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
