//! Which blocks of a normal subgroup lie under a block of the ambient
//! group, determined through restriction of characters.
//!
//! A subgroup block is covered when some irreducible constituent of the
//! restriction of some character of the ambient block lies in it.  For a
//! normal subgroup the constituents of all characters of one ambient
//! block meet exactly the same set of subgroup blocks, so the set is
//! computed per character and the two quantifier readings — "some
//! character meets the block" and "every character meets the block" —
//! are cross-validated by requiring all per-character sets to agree.

use std::collections::BTreeSet;

use chartab::{restrict_and_decompose, CharacterTable};

use crate::partition::BlockPartition;
use crate::BlocksError;

/// Indices of the subgroup blocks covered by `block` of the ambient
/// table.  `fusion` maps each subgroup class to the ambient class
/// containing it.
pub fn block_covering(
    ambient: &CharacterTable,
    sub: &CharacterTable,
    fusion: &[usize],
    ambient_partition: &BlockPartition,
    sub_partition: &BlockPartition,
    block: usize,
) -> Result<BTreeSet<usize>, BlocksError> {
    if block >= ambient_partition.num_blocks() {
        return Err(BlocksError::Covering {
            message: format!(
                "block {block} out of range for a partition with {} blocks",
                ambient_partition.num_blocks()
            ),
        });
    }
    let mut common: Option<BTreeSet<usize>> = None;
    for &row in &ambient_partition.blocks()[block] {
        let mults = restrict_and_decompose(ambient, sub, fusion, row)?;
        let met: BTreeSet<usize> = mults
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m > 0)
            .map(|(j, _)| sub_partition.block_of(j))
            .collect();
        if met.is_empty() {
            return Err(BlocksError::Covering {
                message: format!("character {row} restricts to nothing"),
            });
        }
        match &common {
            None => common = Some(met),
            Some(seen) if *seen == met => {}
            Some(seen) => {
                return Err(BlocksError::Covering {
                    message: format!(
                        "characters of block {block} disagree on the covered blocks \
                         ({seen:?} versus {met:?} at character {row})"
                    ),
                });
            }
        }
    }
    Ok(common.expect("blocks are nonempty"))
}
