//! The partition type: weakly decreasing positive parts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::PartitionsError;

/// A partition of a non-negative integer, stored with weakly decreasing
/// parts.  Input in either orientation is accepted and normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Normalize a list of positive parts into a partition.  Zero parts
    /// are rejected rather than silently dropped.
    pub fn new(parts: &[u64]) -> Result<Self, PartitionsError> {
        if parts.contains(&0) {
            return Err(PartitionsError::InvalidPartition {
                message: "parts must be positive".to_string(),
            });
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub(crate) fn from_normalized(parts: Vec<u64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition { parts }
    }

    /// The weakly decreasing parts.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The conjugate partition, read off the columns of the diagram.
    pub fn transpose(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0) as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().take_while(|&&p| p > c as u64).count() as u64)
            .collect();
        Partition { parts }
    }

    /// Whether the partition equals its transpose.
    pub fn is_self_conjugate(&self) -> bool {
        *self == self.transpose()
    }

    /// Whether the parts are `(k, k-1, ..., 1)` for some `k >= 0`.
    pub fn is_staircase(&self) -> bool {
        let k = self.parts.len() as u64;
        self.parts
            .iter()
            .zip((1..=k).rev())
            .all(|(&p, expect)| p == expect)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = PartitionsError;

    /// Comma-separated positive integers in either orientation.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<u64> = trimmed
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u64>()
                    .map_err(|_| PartitionsError::InvalidPartition {
                        message: format!("cannot read part {tok:?}"),
                    })
            })
            .collect::<Result<_, _>>()?;
        Partition::new(&parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_normalize_to_weakly_decreasing() {
        let p = Partition::new(&[1, 2, 5]).unwrap();
        assert_eq!(p.parts(), &[5, 2, 1]);
        assert_eq!(p.size(), 8);
        assert_eq!(p.to_string(), "(5,2,1)");
        assert!(Partition::new(&[3, 0, 1]).is_err());
        assert_eq!(Partition::empty().to_string(), "()");
    }

    #[test]
    fn parsing_accepts_either_orientation() {
        assert_eq!(
            "1,2,5".parse::<Partition>().unwrap(),
            "5,2,1".parse::<Partition>().unwrap()
        );
        assert_eq!("(4, 4, 2)".parse::<Partition>().unwrap().parts(), &[4, 4, 2]);
        assert!("5,x".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
    }

    #[test]
    fn transposition_is_an_involution() {
        let p = Partition::new(&[5, 2, 1]).unwrap();
        assert_eq!(p.transpose().parts(), &[3, 2, 1, 1, 1]);
        assert_eq!(p.transpose().transpose(), p);
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn self_conjugacy_matches_hand_checks() {
        assert!(Partition::new(&[2, 1]).unwrap().is_self_conjugate());
        assert!(!Partition::new(&[3]).unwrap().is_self_conjugate());
        assert!(Partition::new(&[3, 2, 1]).unwrap().is_staircase());
        assert!(!Partition::new(&[3, 1, 1]).unwrap().is_staircase());
        for n in 8..=40u64 {
            let hook = Partition::new(&[n - 1, 1]).unwrap();
            assert!(!hook.is_self_conjugate());
        }
    }
}
