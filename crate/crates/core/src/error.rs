//! Error type shared by all kernels.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CoreError>;

#[derive(Debug, Error)]
pub enum CoreError {
    /// Operands live over different variable sets.
    #[error("variable set mismatch: {0}")]
    VarSetMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Univariate factorization past the supported degree cap.
    #[error("factorization incomplete: degree {0} exceeds cap {1}")]
    FactorIncomplete(usize, usize),

    /// A search bounded by a degree cap ended without a verdict.
    #[error("undetermined result: {0}")]
    Undetermined(String),

    /// An input outside the supported fragment (e.g. non-rational residue
    /// field where a rational one is required).
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    /// An internal invariant did not hold (e.g. a division against a basis
    /// that should be V-adapted left a remainder of nonnegative order).
    #[error("contract failure: {0}")]
    ContractFailure(String),
}
