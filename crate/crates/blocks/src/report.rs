//! Serializable summary of a block partition.

use serde::{Deserialize, Serialize};

use chartab::CharacterTable;

use crate::partition::BlockPartition;

/// One block: its characters (as row indices with their degrees), its
/// defect, and whether conjugation fixes it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub index: usize,
    pub characters: Vec<usize>,
    pub degrees: Vec<u64>,
    pub defect: u32,
    pub real: bool,
}

/// Full block report for one table and one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub group: String,
    pub order: u64,
    pub prime: u64,
    pub num_blocks: usize,
    pub principal: usize,
    pub blocks: Vec<BlockEntry>,
    pub has_nonprincipal_real: bool,
    /// Least index of a real non-principal block, when one exists.
    pub witness: Option<usize>,
}

/// Assemble the report for a partition of `table`.
pub fn block_report(table: &CharacterTable, partition: &BlockPartition) -> BlockReport {
    let blocks: Vec<BlockEntry> = partition
        .blocks()
        .iter()
        .enumerate()
        .map(|(index, rows)| BlockEntry {
            index,
            characters: rows.clone(),
            degrees: rows.iter().map(|&i| table.degrees()[i]).collect(),
            defect: partition.defect(index),
            real: partition.is_real(index),
        })
        .collect();
    let witness = partition
        .real_blocks()
        .into_iter()
        .find(|&b| b != partition.principal());
    BlockReport {
        group: table.label().to_string(),
        order: table.order(),
        prime: partition.prime(),
        num_blocks: partition.num_blocks(),
        principal: partition.principal(),
        blocks,
        has_nonprincipal_real: witness.is_some(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::block_partition;
    use chartab::compute_table;
    use group_engine::{Family, GroupSpec};

    #[test]
    fn the_report_round_trips_through_json_deterministically() {
        let t = compute_table(&GroupSpec::new(Family::SL, 2, 3).unwrap()).unwrap();
        let p = block_partition(&t, 3).unwrap();
        let report = block_report(&t, &p);
        assert_eq!(report.group, "SL2(3)");
        assert_eq!(report.order, 24);
        assert_eq!(report.prime, 3);
        assert_eq!(report.num_blocks, 3);
        assert_eq!(report.principal, 0);
        assert_eq!(report.blocks[2].degrees, vec![3]);
        assert_eq!(report.blocks[2].defect, 0);
        assert!(report.blocks.iter().all(|b| b.real));
        assert!(report.has_nonprincipal_real);
        assert_eq!(report.witness, Some(1));

        let json = serde_json::to_string_pretty(&report).unwrap();
        let again = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(json, again);
        let back: BlockReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn a_single_block_reports_no_nonprincipal_witness() {
        let t = compute_table(&GroupSpec::new(Family::SL, 2, 3).unwrap()).unwrap();
        let p = block_partition(&t, 2).unwrap();
        let report = block_report(&t, &p);
        assert_eq!(report.num_blocks, 1);
        assert!(report.blocks[0].real);
        assert!(!report.has_nonprincipal_real);
        assert_eq!(report.witness, None);
    }
}
