//! The cyclotomic Hecke algebra `H_{n,r}` over a pluggable exact domain.

mod center;
mod context;
pub mod jm;
pub mod perm;
mod relations;
pub mod straighten;

pub use center::{BlockIdempotent, Cocenter, JmSpan, SigmaDual, FRACTION_CENTER_CAP};
pub use context::{AlgebraContext, AlgebraElement, BasisWord, Parameters};
pub use jm::{sigma, sigma_monomial, JmMonomial, SymmetricExpr};
pub use perm::Permutation;
pub use straighten::StraighteningRule;

use crate::rings::RingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("straightening check failed: {0}")]
    Straightening(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("expression is not symmetric in the Jucys-Murphy variables")]
    NonSymmetric,
    #[error("could not split the center: {0}")]
    SplitFailure(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
