//! Integer partitions and the domino combinatorics governing 2-blocks of
//! symmetric groups.
//!
//! The characters of the symmetric group on `n` letters are indexed by
//! partitions of `n`, a character lies in the principal 2-block exactly
//! when its partition has the same 2-core as the trivial one, and a
//! character is real-valued on the alternating subgroup unless its
//! partition is self-conjugate.  This crate supplies those three
//! ingredients — 2-cores by rim-domino removal, transposition, and the
//! principal-block test — plus, for every `n >= 8`, an explicit witness
//! partition that is neither self-conjugate nor principal.

pub mod cores;
pub mod shape;
pub mod witness;

pub use cores::{in_principal_2block_sn, two_core};
pub use shape::Partition;
pub use witness::{alternating_witness, AlternatingWitness};

/// Errors for partition construction and witness selection.
#[derive(Debug, thiserror::Error)]
pub enum PartitionsError {
    #[error("invalid partition: {message}")]
    InvalidPartition { message: String },
    #[error("no alternating witness below 8 (asked for n = {n})")]
    WitnessRange { n: u64 },
}
