//! Block partitions of character tables at a prime.
//!
//! Two irreducible characters lie in the same `l`-block exactly when their
//! central characters agree on every class after reduction modulo a fixed
//! maximal ideal above `l` in the cyclotomic integers of the group
//! exponent.  This crate computes that partition exactly:
//!
//! * [`central_characters`] builds the matrix of central-character values
//!   `|K| chi(g_K) / chi(1)` and verifies their integrality;
//! * [`block_partition`] groups rows by their reduced central characters,
//!   assigns each block its defect, locates the principal block, and marks
//!   which blocks are fixed by complex conjugation;
//! * [`has_nonprincipal_real_2block`] answers the headline question for a
//!   table at `l = 2`;
//! * [`block_covering`] computes which blocks of a subgroup are covered by
//!   a block of the ambient group, through restriction constituents, and
//!   cross-validates the two equivalent quantifier readings.
//!
//! The prime 2 is the primary client and uses the packed residue-field
//! reduction from `algebra-core`; odd primes are supported through a
//! residue field built on the generic finite-field machinery.

pub mod central;
pub mod covering;
pub mod partition;
pub mod reduction;
pub mod report;

pub use central::central_characters;
pub use covering::block_covering;
pub use partition::{
    block_partition, block_partition_with, has_nonprincipal_real_2block, real_blocks,
    BlockPartition,
};
pub use reduction::{ClassReduction, OddIdealReduction};
pub use report::{block_report, BlockEntry, BlockReport};

use algebra_core::AlgebraError;
use chartab::ChartabError;

/// Errors produced while partitioning tables into blocks.
#[derive(Debug, thiserror::Error)]
pub enum BlocksError {
    #[error(transparent)]
    Chartab(#[from] ChartabError),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("table {table}: {message}")]
    Integrity { table: String, message: String },

    #[error("unsupported request: {message}")]
    Unsupported { message: String },

    #[error("covering inconsistency: {message}")]
    Covering { message: String },
}
