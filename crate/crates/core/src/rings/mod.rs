//! Exact arithmetic: rationals, Laurent polynomials in the Hecke parameters,
//! cyclotomic fields, and linear algebra over them.

pub mod cyclotomic;
pub mod laurent;
pub mod linalg;
pub mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use laurent::{elementary_symmetric, LaurentPoly, Monomial};
pub use linalg::{kernel_basis, rank, solve, SpanBuilder};
pub use scalar::{parse_scalar, specialize, RatFunc, Scalar, ScalarDomain};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
}
