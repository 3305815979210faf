//! Partition of the irreducible characters into blocks for a prime, with
//! defects and reality flags.
//!
//! Two characters lie in the same block exactly when their central
//! character rows agree on every class after reduction modulo one fixed
//! maximal ideal above the prime.  The partition is provably independent
//! of the ideal choice; `block_partition_with` exposes the choice so that
//! independence can be tested exhaustively.

use std::collections::BTreeMap;

use chartab::CharacterTable;

use crate::central::central_characters;
use crate::reduction::ClassReduction;
use crate::BlocksError;

/// Exponent of the largest power of `ell` dividing `n`.
pub(crate) fn valuation(mut n: u64, ell: u64) -> u32 {
    debug_assert!(n > 0);
    let mut v = 0;
    while n % ell == 0 {
        n /= ell;
        v += 1;
    }
    v
}

/// The block partition of a character table at a prime, together with
/// per-block defects, the principal block, and reality flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    prime: u64,
    /// Sorted row indices per block; blocks ordered by least member, so
    /// the principal block (containing the trivial character, row 0) is
    /// always block 0.
    blocks: Vec<Vec<usize>>,
    defects: Vec<u32>,
    principal: usize,
    real: Vec<bool>,
}

impl BlockPartition {
    /// The prime the partition was computed for.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Number of blocks.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Sorted row indices of each block.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Index of the block containing a character row.
    pub fn block_of(&self, row: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&row).is_ok())
            .expect("every row lies in a block")
    }

    /// Defect of a block.
    pub fn defect(&self, block: usize) -> u32 {
        self.defects[block]
    }

    /// Index of the block containing the trivial character.
    pub fn principal(&self) -> usize {
        self.principal
    }

    /// Whether complex conjugation maps a block onto itself.
    pub fn is_real(&self, block: usize) -> bool {
        self.real[block]
    }

    /// Indices of the real blocks, in increasing order.
    pub fn real_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.real[b]).collect()
    }
}

/// Block partition at `ell` using the canonical ideal choice.
pub fn block_partition(table: &CharacterTable, ell: u64) -> Result<BlockPartition, BlocksError> {
    let reduction = ClassReduction::new(ell, table.exponent())?;
    block_partition_with(table, &reduction)
}

/// Block partition using an explicit ideal choice.  The result is the
/// same for every choice; passing it explicitly lets tests verify that.
pub fn block_partition_with(
    table: &CharacterTable,
    reduction: &ClassReduction,
) -> Result<BlockPartition, BlocksError> {
    let ell = reduction.prime();
    let omegas = central_characters(table)?;
    let mut by_reduced_row: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (i, row) in omegas.iter().enumerate() {
        let reduced: Vec<u64> = row
            .iter()
            .map(|w| reduction.reduce(w))
            .collect::<Result<_, _>>()?;
        by_reduced_row.entry(reduced).or_default().push(i);
    }
    let mut blocks: Vec<Vec<usize>> = by_reduced_row.into_values().collect();
    blocks.sort_by_key(|b| b[0]);

    let a = valuation(table.order(), ell);
    let defects: Vec<u32> = blocks
        .iter()
        .map(|b| {
            a - b
                .iter()
                .map(|&i| valuation(table.degrees()[i], ell))
                .min()
                .expect("blocks are nonempty")
        })
        .collect();
    for (b, block) in blocks.iter().enumerate() {
        if defects[b] == 0 && block.len() != 1 {
            return Err(BlocksError::Integrity {
                table: table.label().to_string(),
                message: format!("defect-zero block {b} contains {} characters", block.len()),
            });
        }
    }

    let principal = blocks
        .iter()
        .position(|b| b.contains(&0))
        .expect("the trivial character lies in a block");
    debug_assert_eq!(principal, 0, "blocks are ordered by least member");

    // Complex conjugation permutes the central character rows, hence the
    // blocks; verify that and record which blocks it fixes.
    let conj = table.conj_permutation()?;
    let mut real = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let mut image: Vec<usize> = block.iter().map(|&i| conj[i]).collect();
        image.sort_unstable();
        if !blocks.iter().any(|b| *b == image) {
            return Err(BlocksError::Integrity {
                table: table.label().to_string(),
                message: "conjugation does not permute the blocks".to_string(),
            });
        }
        real.push(image == *block);
    }
    if !real[principal] {
        return Err(BlocksError::Integrity {
            table: table.label().to_string(),
            message: "the principal block is not fixed by conjugation".to_string(),
        });
    }

    Ok(BlockPartition {
        prime: ell,
        blocks,
        defects,
        principal,
        real,
    })
}

/// Indices of the blocks mapped onto themselves by complex conjugation.
pub fn real_blocks(partition: &BlockPartition) -> Vec<usize> {
    partition.real_blocks()
}

/// Whether the table has a real block at 2 other than the principal one,
/// together with the least index of such a block.
pub fn has_nonprincipal_real_2block(
    table: &CharacterTable,
) -> Result<(bool, Option<usize>), BlocksError> {
    let partition = block_partition(table, 2)?;
    let witness = partition
        .real_blocks()
        .into_iter()
        .find(|&b| b != partition.principal());
    Ok((witness.is_some(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::CycInt;
    use chartab::{compute_table, TableParts, TableSource};
    use group_engine::{Family, GroupSpec};

    fn sl2_3() -> CharacterTable {
        compute_table(&GroupSpec::new(Family::SL, 2, 3).unwrap()).unwrap()
    }

    #[test]
    fn sl2_3_has_one_block_at_two() {
        let t = sl2_3();
        let p = block_partition(&t, 2).unwrap();
        assert_eq!(p.num_blocks(), 1);
        assert_eq!(p.blocks()[0], (0..7).collect::<Vec<_>>());
        assert_eq!(p.defect(0), 3);
        assert_eq!(p.principal(), 0);
        assert!(p.is_real(0));
        assert_eq!(p.real_blocks(), vec![0]);
        let (found, witness) = has_nonprincipal_real_2block(&t).unwrap();
        assert!(!found);
        assert_eq!(witness, None);
    }

    #[test]
    fn sl2_3_blocks_at_three_split_by_degree() {
        // 24 = 3 * 8: the three linear characters form the principal
        // block, the three degree-2 characters a second block, and the
        // defect-zero degree-3 character is alone.
        let t = sl2_3();
        let p = block_partition(&t, 3).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1, 2], vec![3, 4, 5], vec![6]]);
        assert_eq!(
            (0..3).map(|b| p.defect(b)).collect::<Vec<_>>(),
            vec![1, 1, 0]
        );
        assert_eq!(p.principal(), 0);
        assert_eq!(p.real_blocks(), vec![0, 1, 2]);
        assert_eq!(p.block_of(4), 1);
    }

    #[test]
    fn the_trivial_group_has_a_single_block_of_defect_zero() {
        let parts = TableParts {
            label: "1".to_string(),
            order: 1,
            exponent: 1,
            class_sizes: vec![1],
            class_orders: vec![1],
            inverse_classes: vec![0],
            rows: vec![vec![CycInt::one()]],
        };
        let t = CharacterTable::from_parts(parts, TableSource::Ingested).unwrap();
        for ell in [2, 3, 5] {
            let p = block_partition(&t, ell).unwrap();
            assert_eq!(p.num_blocks(), 1);
            assert_eq!(p.defect(0), 0);
            assert!(p.is_real(0));
        }
    }

    #[test]
    fn sl3_3_nonprincipal_blocks_are_defect_zero_and_paired_by_conjugation() {
        let t = compute_table(&GroupSpec::new(Family::SL, 3, 3).unwrap()).unwrap();
        let p = block_partition(&t, 2).unwrap();
        assert_eq!(p.num_blocks(), 5);
        for b in 0..p.num_blocks() {
            if b == p.principal() {
                assert_eq!(p.defect(b), 4);
                assert!(p.is_real(b));
            } else {
                assert_eq!(p.defect(b), 0);
                assert_eq!(p.blocks()[b].len(), 1);
                // Each defect-zero character here has degree 16.
                assert_eq!(t.degrees()[p.blocks()[b][0]], 16);
                assert!(!p.is_real(b));
            }
        }
        let (found, witness) = has_nonprincipal_real_2block(&t).unwrap();
        assert!(!found);
        assert_eq!(witness, None);
    }

    #[test]
    fn gl2_3_block_count_matches_odd_order_semisimple_classes() {
        use group_engine::MatrixGroup;
        let spec = GroupSpec::new(Family::GL, 2, 3).unwrap();
        let t = compute_table(&spec).unwrap();
        let p = block_partition(&t, 2).unwrap();
        // Independent count: conjugacy classes whose representative has
        // order coprime to both the block prime and the defining prime.
        let g = MatrixGroup::enumerate(&spec, group_engine::DEFAULT_ENUMERATION_CAP).unwrap();
        let data = g.conjugacy_data();
        let semisimple_odd = (0..g.num_classes())
            .filter(|&c| {
                let o = data.order_of_class(c);
                o % 2 != 0 && o % 3 != 0
            })
            .count();
        assert_eq!(semisimple_odd, 1);
        assert_eq!(p.num_blocks(), semisimple_odd);
    }

    #[test]
    fn the_partition_does_not_depend_on_the_ideal_choice() {
        for (spec, ell) in [
            (GroupSpec::new(Family::SL, 2, 3).unwrap(), 2),
            (GroupSpec::new(Family::SL, 3, 3).unwrap(), 2),
            (GroupSpec::new(Family::SL, 2, 3).unwrap(), 3),
            (GroupSpec::new(Family::GL, 2, 3).unwrap(), 3),
        ] {
            let t = compute_table(&spec).unwrap();
            let choices = ClassReduction::all_choices(ell, t.exponent()).unwrap();
            let reference = block_partition(&t, ell).unwrap();
            assert!(!choices.is_empty());
            for choice in &choices {
                assert_eq!(block_partition_with(&t, choice).unwrap(), reference);
            }
        }
    }

    #[test]
    fn block_sizes_sum_to_the_number_of_characters() {
        for spec in [
            GroupSpec::new(Family::SL, 2, 3).unwrap(),
            GroupSpec::new(Family::GL, 2, 3).unwrap(),
            GroupSpec::new(Family::SU, 2, 3).unwrap(),
        ] {
            let t = compute_table(&spec).unwrap();
            for ell in [2, 3, 7] {
                let p = block_partition(&t, ell).unwrap();
                let total: usize = p.blocks().iter().map(|b| b.len()).sum();
                assert_eq!(total, t.num_classes());
                // Defect zero forces a full ell-part in the degree.
                let a = valuation(t.order(), ell);
                for b in 0..p.num_blocks() {
                    if p.defect(b) == 0 {
                        let row = p.blocks()[b][0];
                        assert_eq!(valuation(t.degrees()[row], ell), a);
                    }
                }
            }
        }
    }
}
