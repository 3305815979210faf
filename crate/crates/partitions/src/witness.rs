//! Witness partitions for alternating groups.
//!
//! For `n >= 8` the partition `(n-3, 2, 1)` (n even) or `(n-1, 1)` (n
//! odd) indexes a symmetric-group character that is neither in the
//! principal 2-block nor self-conjugate.  Outside the principal block it
//! stays outside the principal block of the alternating subgroup, and
//! not being self-conjugate it restricts irreducibly to a real-valued
//! character there — producing a real non-principal 2-block of the
//! alternating group.  Both facts are recomputed and recorded in the
//! returned bundle.

use serde::{Deserialize, Serialize};

use crate::cores::{in_principal_2block_sn, two_core};
use crate::shape::Partition;
use crate::PartitionsError;

/// A witness partition together with the two verified facts the
/// alternating-group argument needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingWitness {
    pub n: u64,
    pub partition: Partition,
    pub core: Partition,
    pub self_conjugate: bool,
    pub in_principal_block: bool,
}

impl AlternatingWitness {
    /// Both required facts hold: not self-conjugate, not principal.
    pub fn holds(&self) -> bool {
        !self.self_conjugate && !self.in_principal_block
    }
}

/// The witness partition for the alternating group on `n >= 8` letters,
/// with its verification bundle.
pub fn alternating_witness(n: u64) -> Result<AlternatingWitness, PartitionsError> {
    if n < 8 {
        return Err(PartitionsError::WitnessRange { n });
    }
    let partition = if n % 2 == 0 {
        Partition::new(&[n - 3, 2, 1]).expect("positive parts for n >= 8")
    } else {
        Partition::new(&[n - 1, 1]).expect("positive parts for n >= 8")
    };
    debug_assert_eq!(partition.size(), n);
    Ok(AlternatingWitness {
        n,
        core: two_core(&partition),
        self_conjugate: partition.is_self_conjugate(),
        in_principal_block: in_principal_2block_sn(&partition),
        partition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_smallest_witnesses_are_the_expected_partitions() {
        let w8 = alternating_witness(8).unwrap();
        assert_eq!(w8.partition.parts(), &[5, 2, 1]);
        assert_eq!(w8.core.parts(), &[3, 2, 1]);
        assert!(w8.holds());

        let w9 = alternating_witness(9).unwrap();
        assert_eq!(w9.partition.parts(), &[8, 1]);
        assert_eq!(w9.core.parts(), &[2, 1]);
        assert!(w9.holds());
    }

    #[test]
    fn small_n_is_rejected() {
        for n in 0..8 {
            assert!(matches!(
                alternating_witness(n),
                Err(PartitionsError::WitnessRange { .. })
            ));
        }
    }

    #[test]
    fn the_bundle_holds_across_the_whole_checked_range() {
        for n in 8..=40 {
            let w = alternating_witness(n).unwrap();
            assert_eq!(w.partition.size(), n);
            assert!(!w.self_conjugate, "witness for {n} must not be self-conjugate");
            assert!(
                !w.in_principal_block,
                "witness for {n} must avoid the principal block"
            );
            // The recorded core really is the core of the partition.
            assert_eq!(w.core, two_core(&w.partition));
        }
    }
}
