//! Finite classical matrix groups over odd fields.
//!
//! This crate specifies the general/special linear, unitary, symplectic,
//! and orthogonal groups concretely as matrix groups with fixed invariant
//! forms, and provides:
//!
//! * validated parameters, exact orders, centers, and membership tests
//!   ([`GroupSpec`]);
//! * full enumeration of small groups with canonical conjugacy-class data
//!   ([`MatrixGroup`]);
//! * three-valued conjugacy testing with verified conjugators or named
//!   obstructions ([`conjugacy`]);
//! * membership in derived subgroups with stated methods ([`derived`]);
//! * the standard embeddings of the general linear group into isometry
//!   groups of forms ([`embeddings`]);
//! * congruence of symmetric forms and transport of involution models,
//!   used to build explicit real semisimple elements of orthogonal
//!   groups ([`congruence`]).

pub mod congruence;
pub mod conjugacy;
pub mod derived;
pub mod embeddings;
pub mod group;
pub mod spec;

pub use conjugacy::{Conjugacy, NonConjugacyEvidence};
pub use derived::DerivedMembership;
pub use group::{MatrixGroup, DEFAULT_ENUMERATION_CAP};
pub use spec::{Family, GroupSpec};

use num_bigint::BigUint;

/// Errors from group construction, enumeration, and membership.
#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("invalid group parameters: {0}")]
    InvalidParameters(String),

    #[error("group of order {order} exceeds the enumeration cap {cap}; use precomputed class data instead")]
    Unenumerable { order: BigUint, cap: u64 },

    #[error("enumeration produced {found} elements where the group order is {expected}")]
    EnumerationMismatch { expected: BigUint, found: u64 },

    #[error("matrix size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("matrix is not an element of {0}")]
    NotInGroup(String),

    #[error("no generating set available: {0}")]
    NoGenerators(String),

    #[error(transparent)]
    Algebra(#[from] algebra_core::AlgebraError),
}
