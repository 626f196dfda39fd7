use thiserror::Error;

use crate::algebra::{AlgebraKind, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("c_LI must be nonzero")]
    ZeroMixedCharge,
    #[error("mode {mode} does not belong to the {kind} algebra")]
    MixedAlgebra { mode: Mode, kind: AlgebraKind },
    #[error("cannot resolve action of {mode} on base vector {base}")]
    Unresolvable { mode: Mode, base: String },
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("highest weight is typical: {0}")]
    Typical(String),
    #[error("highest weight is atypical: {0}")]
    Atypical(String),
    #[error("incompatible weights: {0}")]
    IncompatibleWeights(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
