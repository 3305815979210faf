//! Exact ordinary character tables over cyclotomic integers.
//!
//! The crate provides a single table type, [`CharacterTable`], that stores
//! every character value as an exact [`algebra_core::CycInt`].  Tables come
//! from two places and are verified identically in both cases:
//!
//! * [`compute_table`] / [`compute_table_for`] build the table of an
//!   enumerable finite group from scratch by simultaneous diagonalisation of
//!   class-sum matrices over a suitable prime field, followed by an exact
//!   lift of every value back into cyclotomic integers;
//! * [`parse_ctx`] / [`read_ctx_file`] ingest a table from the bundled text
//!   format and re-verify all defining identities, because external data is
//!   never trusted.
//!
//! On top of the table the crate offers the complex-conjugation permutation
//! of the rows ([`CharacterTable::conj_permutation`]) and exact restriction
//! of a character to a subgroup along class-fusion data
//! ([`restrict_and_decompose`]).

pub mod ctx;
pub mod dixon;
pub mod ops;
pub mod restrict;
pub mod table;

pub use ctx::{parse_ctx, parse_fusion, read_ctx_file, read_fusion_file, write_ctx, FusionFile};
pub use dixon::{compute_table, compute_table_for, dixon_prime};
pub use ops::GroupOps;
pub use restrict::{matrix_fusion, restrict_and_decompose};
pub use table::{CharacterTable, TableParts, TableSource};

use algebra_core::AlgebraError;
use group_engine::GroupError;

/// Which orthogonality relation a failed pair violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthKind {
    /// Inner product of two rows against class sizes.
    Row,
    /// Inner product of two columns over all rows.
    Column,
}

impl std::fmt::Display for OrthKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrthKind::Row => write!(f, "row"),
            OrthKind::Column => write!(f, "column"),
        }
    }
}

/// Errors produced while building, ingesting, or consuming tables.
#[derive(Debug, thiserror::Error)]
pub enum ChartabError {
    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("table text, line {line}: {message}")]
    CtxParse { line: usize, message: String },

    #[error("table {table} is not a character table: {message}")]
    TableIntegrity { table: String, message: String },

    #[error("table {table}: {kind} orthogonality fails for pair ({first}, {second})")]
    Orthogonality {
        table: String,
        kind: OrthKind,
        first: usize,
        second: usize,
    },

    #[error("fusion data rejected: {message}")]
    Fusion { message: String },

    #[error("internal invariant violated: {message}")]
    Internal { message: String },
}
