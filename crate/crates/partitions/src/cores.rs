//! 2-cores by rim-domino removal, and the principal-block test.

use crate::shape::Partition;

/// Every partition reachable from `parts` by removing one rim domino
/// (a horizontal pair at the end of a row, or a vertical pair across two
/// equal rows), normalized with zero rows stripped.
pub(crate) fn domino_moves(parts: &[u64]) -> Vec<Vec<u64>> {
    let k = parts.len();
    let at = |i: usize| if i < k { parts[i] } else { 0 };
    let mut moves = Vec::new();
    for i in 0..k {
        if parts[i] >= 2 && parts[i] - 2 >= at(i + 1) {
            let mut next = parts.to_vec();
            next[i] -= 2;
            next.retain(|&p| p > 0);
            moves.push(next);
        }
        if i + 1 < k && parts[i] == parts[i + 1] && parts[i + 1] - 1 >= at(i + 2) {
            let mut next = parts.to_vec();
            next[i] -= 1;
            next[i + 1] -= 1;
            next.retain(|&p| p > 0);
            moves.push(next);
        }
    }
    moves
}

/// The 2-core: remove rim dominoes until none remains.  The result does
/// not depend on the removal order; this implementation removes greedily
/// from the largest row first.  The core is always a staircase.
pub fn two_core(lambda: &Partition) -> Partition {
    let mut parts = lambda.parts().to_vec();
    loop {
        match domino_moves(&parts).into_iter().next() {
            Some(next) => parts = next,
            None => break,
        }
    }
    let core = Partition::from_normalized(parts);
    debug_assert!(core.is_staircase());
    core
}

/// Whether the corresponding symmetric-group character lies in the
/// principal 2-block: the 2-core must match that of the trivial
/// character, which is empty for even `n` and `(1)` for odd `n`.
pub fn in_principal_2block_sn(lambda: &Partition) -> bool {
    let core = two_core(lambda);
    if lambda.size() % 2 == 0 {
        core.is_empty()
    } else {
        core.parts() == [1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::collections::HashMap;

    /// Exhaustive oracle: explore every removal sequence, checking along
    /// the way that all of them reach one and the same core.
    fn oracle_core(parts: &[u64], memo: &mut HashMap<Vec<u64>, Vec<u64>>) -> Vec<u64> {
        if let Some(core) = memo.get(parts) {
            return core.clone();
        }
        let moves = domino_moves(parts);
        let core = if moves.is_empty() {
            parts.to_vec()
        } else {
            let mut cores: Vec<Vec<u64>> = moves
                .iter()
                .map(|next| oracle_core(next, memo))
                .collect();
            cores.sort();
            cores.dedup();
            assert_eq!(
                cores.len(),
                1,
                "removal sequences from {parts:?} disagree: {cores:?}"
            );
            cores.pop().unwrap()
        };
        memo.insert(parts.to_vec(), core.clone());
        core
    }

    fn all_partitions(n: u64) -> Vec<Vec<u64>> {
        fn extend(remaining: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if remaining == 0 {
                out.push(prefix.clone());
                return;
            }
            for next in (1..=remaining.min(max)).rev() {
                prefix.push(next);
                extend(remaining - next, next, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        extend(n, n.max(1), &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn hand_checked_cores() {
        let core = |parts: &[u64]| two_core(&Partition::new(parts).unwrap());
        assert_eq!(core(&[1]).parts(), &[1]);
        assert!(core(&[2, 2]).is_empty());
        assert_eq!(core(&[5, 2, 1]).parts(), &[3, 2, 1]);
        assert!(two_core(&Partition::empty()).is_empty());
    }

    #[test]
    fn greedy_core_matches_the_exhaustive_oracle_up_to_twenty() {
        let mut memo = HashMap::new();
        for n in 0..=20 {
            for parts in all_partitions(n) {
                let lambda = Partition::new(&parts).unwrap();
                let greedy = two_core(&lambda);
                let oracle = oracle_core(&parts, &mut memo);
                assert_eq!(greedy.parts(), &oracle[..], "core of {parts:?}");
                // Dominoes remove two boxes at a time.
                assert_eq!((lambda.size() - greedy.size()) % 2, 0);
                // The core is stable and a staircase.
                assert_eq!(two_core(&greedy), greedy);
                assert!(greedy.is_staircase());
            }
        }
    }

    #[test]
    fn random_removal_orders_reach_the_greedy_core() {
        let mut rng = StdRng::seed_from_u64(0x2c07e);
        for _ in 0..200 {
            let n = rng.gen_range(1..=30u64);
            // Random partition of n by repeatedly cutting off a part no
            // larger than the previous one.
            let mut parts = Vec::new();
            let mut remaining = n;
            let mut max = n;
            while remaining > 0 {
                let next = rng.gen_range(1..=remaining.min(max));
                parts.push(next);
                max = next;
                remaining -= next;
            }
            let lambda = Partition::new(&parts).unwrap();
            let mut walk = parts.clone();
            loop {
                let moves = domino_moves(&walk);
                if moves.is_empty() {
                    break;
                }
                walk = moves[rng.gen_range(0..moves.len())].clone();
            }
            assert_eq!(two_core(&lambda).parts(), &walk[..]);
        }
    }

    #[test]
    fn transposing_commutes_with_taking_the_core() {
        for n in 0..=14 {
            for parts in all_partitions(n) {
                let lambda = Partition::new(&parts).unwrap();
                assert_eq!(
                    two_core(&lambda.transpose()),
                    two_core(&lambda).transpose(),
                    "transpose of {parts:?}"
                );
            }
        }
    }

    #[test]
    fn principal_block_membership_matches_the_trivial_core() {
        let member = |parts: &[u64]| in_principal_2block_sn(&Partition::new(parts).unwrap());
        assert!(member(&[1, 1]));
        assert!(member(&[1]));
        assert!(member(&[2]));
        assert!(member(&[3, 1]));
        assert!(member(&[2, 1, 1]));
        assert!(!member(&[2, 1]));
        assert!(!member(&[3, 2, 1]));
        // The trivial partition itself is principal for every n.
        for n in 1..=30 {
            assert!(member(&[n]));
        }
    }
}
