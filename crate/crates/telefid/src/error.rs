use thiserror::Error;

#[derive(Debug, Error)]
pub enum TelefidError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A state failed the physicality check (negative eigenvalue, ...).
    #[error("non-physical state: {0}")]
    NonPhysical(String),

    /// A measurement basis does not resolve the identity.
    #[error("incomplete measurement basis: {0}")]
    IncompleteBasis(String),

    /// An iterative refinement failed to reach its target accuracy.
    #[error("convergence failure: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, TelefidError>;
