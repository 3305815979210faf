//! Exact computational-algebra primitives: machine-word modular arithmetic,
//! finite fields up to `2^63` elements, dense polynomials and matrices over
//! them, cyclotomic integers with arbitrary-precision coefficients, and
//! reductions of cyclotomic integers modulo maximal ideals over 2.
//!
//! Everything here is deterministic and exact; floating point appears only
//! inside test oracles.  Higher layers build finite-group machinery
//! (character tables, block partitions, conjugacy certificates) on top of
//! these primitives.

pub mod arith;
pub mod cyclotomic;
pub mod field;
pub mod ideal;
pub mod matrix;
pub mod poly;

pub use cyclotomic::CycInt;
pub use field::{FieldDescriptor, FieldElement};
pub use ideal::IdealReduction;
pub use matrix::Matrix;
pub use poly::Poly;

/// Errors surfaced by the algebra layer.  Anything that would silently lose
/// exactness (inexact division, unreachable subfield, out-of-range field) is
/// reported rather than approximated.
#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    BadDegree,
    #[error("field size exceeds the 2^63 bound")]
    FieldTooLarge,
    #[error("bad coefficients: {what}")]
    BadCoefficients { what: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primitive {n}-th root of unity in a field of {q} elements")]
    NoSuchRootOfUnity { n: u64, q: u64 },
    #[error("{small} is not a subfield of {big}")]
    NotASubfield { small: String, big: String },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("element order exceeds search limit {0}")]
    OrderSearchExceeded(u64),
    #[error("{u} is not invertible modulo {n}")]
    NotCoprime { u: u64, n: u64 },
    #[error("inexact division: {what}")]
    NotIntegral { what: String },
    #[error("conductor {value} does not divide {requested}")]
    ConductorMismatch { value: u64, requested: u64 },
}
