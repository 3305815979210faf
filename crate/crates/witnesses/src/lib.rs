//! Witness elements in finite classical groups.
//!
//! Each classical family — linear/unitary (`A`), odd orthogonal (`B`),
//! symplectic (`C`), even orthogonal (`D`) — registers a construction
//! strategy behind the [`family::WitnessFamily`] trait.  A strategy builds a
//! nontrivial semisimple element of odd order together with an explicit
//! group element conjugating it to its inverse, or reports that no such
//! element exists for the given parameters.
//!
//! Three conditions are then checked and bundled into a certificate
//! ([`certificate::WitnessCertificate`]) that re-verifies offline by matrix
//! arithmetic alone:
//!
//! * **A** — the element is nontrivial, has odd order, and is conjugate to
//!   its inverse by an exhibited member of the group;
//! * **B** — no nontrivial central translate `s·z` is conjugate to `s`;
//! * **C** — the element lies in the derived subgroup.

pub mod certificate;
pub mod conditions;
pub mod family;
mod torus;
mod typea;
mod typeb;
mod typec;
mod typed;

pub use certificate::{
    certificate_from_json, certificate_to_json, certify, certify_witness, decode_matrix,
    encode_matrix, verify_certificate, CertificateTrace, GroupDescriptor, MatrixData,
    WitnessCertificate, STATUS_CERTIFIED, STATUS_FAILED, STATUS_LIMITED,
};
pub use conditions::{
    check_condition_a, check_condition_b, check_condition_c, CentralComparison, CentralVerdict,
    ConditionA, ConditionB, ConditionC, ConditionReport, RealityEvidence,
};
pub use family::{
    family_by_code, registry, witness_family_for, Construction, ConstructedWitness, Trace,
    WitnessFamily,
};
pub use typea::construct_type_a;
pub use typeb::construct_type_b;
pub use typec::construct_type_c;
pub use typed::construct_type_d;

/// Errors from witness construction and certificate checking.
#[derive(Debug, thiserror::Error)]
pub enum WitnessError {
    #[error(transparent)]
    Algebra(#[from] algebra_core::AlgebraError),

    #[error(transparent)]
    Group(#[from] group_engine::GroupError),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("certificate rejected: {0}")]
    Verification(String),

    #[error(transparent)]
    Serialization(#[from] serde_json::Error),
}
