//! The verified character table type.
//!
//! A [`CharacterTable`] is a square array of exact cyclotomic-integer values
//! together with the class data needed to interpret it: class sizes,
//! representative orders, and the inverse-class permutation.  Construction
//! through [`CharacterTable::from_parts`] never hands back an unverified
//! table: both orthogonality relations, the degree identities, and all
//! consistency conditions on the class data are checked exactly, whether the
//! rows were just computed or read from a file.
//!
//! Rows are kept in a canonical order — the trivial character first, the
//! rest sorted by degree and then by the value vector — so that two tables
//! of the same group built along different routes compare equal.

use std::collections::BTreeMap;

use algebra_core::{arith, CycInt};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::{ChartabError, OrthKind};

/// Provenance of a table: computed from a group, or ingested from text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableSource {
    /// Built by the in-crate table computation.
    Computed,
    /// Parsed from the bundled text format and re-verified.
    Ingested,
}

/// Unverified ingredients of a table, as assembled by a computation or a
/// parser.  `inverse_classes` is 0-based.  Rows may arrive in any order; the
/// constructor sorts them canonically.
#[derive(Debug, Clone)]
pub struct TableParts {
    pub label: String,
    pub order: u64,
    pub exponent: u64,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub inverse_classes: Vec<usize>,
    pub rows: Vec<Vec<CycInt>>,
}

/// A verified ordinary character table with exact cyclotomic values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    label: String,
    order: u64,
    exponent: u64,
    class_sizes: Vec<u64>,
    class_orders: Vec<u64>,
    inverse_classes: Vec<usize>,
    degrees: Vec<u64>,
    rows: Vec<Vec<CycInt>>,
    source: TableSource,
}

impl CharacterTable {
    /// Verifies all defining identities of `parts` and returns the table
    /// with rows in canonical order.  Fails with a description of the first
    /// violated identity; orthogonality failures name the offending pair.
    pub fn from_parts(parts: TableParts, source: TableSource) -> Result<Self, ChartabError> {
        let TableParts {
            label,
            order,
            exponent,
            class_sizes,
            class_orders,
            inverse_classes,
            mut rows,
        } = parts;

        let integrity = |message: String| ChartabError::TableIntegrity {
            table: label.clone(),
            message,
        };

        let r = class_sizes.len();
        if r == 0 {
            return Err(integrity("no conjugacy classes".into()));
        }
        if class_orders.len() != r || inverse_classes.len() != r {
            return Err(integrity("class data arrays disagree in length".into()));
        }
        if rows.len() != r {
            return Err(integrity(format!(
                "{} rows for {} classes; the table must be square",
                rows.len(),
                r
            )));
        }
        if rows.iter().any(|row| row.len() != r) {
            return Err(integrity("a row has the wrong number of values".into()));
        }

        // Class data: identity class first, sizes summing to the order and
        // dividing it, the inverse map an involution preserving size and
        // representative order, and the exponent the lcm of the orders.
        if class_sizes[0] != 1 || class_orders[0] != 1 {
            return Err(integrity("class 0 must be the identity class".into()));
        }
        if class_sizes.iter().sum::<u64>() != order {
            return Err(integrity("class sizes do not sum to the group order".into()));
        }
        for (k, &size) in class_sizes.iter().enumerate() {
            if size == 0 || order % size != 0 {
                return Err(integrity(format!("class {k} size {size} does not divide {order}")));
            }
        }
        for k in 0..r {
            let inv = inverse_classes[k];
            if inv >= r
                || inverse_classes[inv] != k
                || class_sizes[inv] != class_sizes[k]
                || class_orders[inv] != class_orders[k]
            {
                return Err(integrity(format!("inverse-class map is broken at class {k}")));
            }
        }
        if inverse_classes[0] != 0 {
            return Err(integrity("the identity class must be self-inverse".into()));
        }
        let lcm_orders = class_orders.iter().fold(1, |acc, &o| arith::lcm(acc, o));
        if lcm_orders != exponent {
            return Err(integrity(format!(
                "stated exponent {exponent} differs from lcm of element orders {lcm_orders}"
            )));
        }

        // Every value must live in the cyclotomic field of the exponent; for
        // normalised conductors (never 2 mod 4) that is plain divisibility.
        for (i, row) in rows.iter().enumerate() {
            for (k, value) in row.iter().enumerate() {
                let c = value.conductor();
                if exponent % c != 0 {
                    return Err(integrity(format!(
                        "value at ({i}, {k}) has conductor {c}, not dividing the exponent {exponent}"
                    )));
                }
            }
        }

        // The trivial character is moved to row 0; the rest sort by degree
        // and then by the value vector, giving a canonical order.
        let trivial = rows
            .iter()
            .position(|row| row.iter().all(CycInt::is_one))
            .ok_or_else(|| integrity("no trivial character among the rows".into()))?;
        rows.swap(0, trivial);
        rows[1..].sort_by(|a, b| {
            let da = a[0].as_bigint();
            let db = b[0].as_bigint();
            da.cmp(&db).then_with(|| a.cmp(b))
        });

        // Degrees: positive rational integers whose squares sum to the order.
        let mut degrees = Vec::with_capacity(r);
        for (i, row) in rows.iter().enumerate() {
            let d = row[0]
                .as_bigint()
                .filter(|d| d.is_positive())
                .ok_or_else(|| {
                    integrity(format!("row {i} has degree {}, not a positive integer", row[0]))
                })?;
            let d = d
                .to_u64()
                .ok_or_else(|| integrity(format!("row {i} degree does not fit in 64 bits")))?;
            degrees.push(d);
        }
        let degree_square_sum: u64 = degrees.iter().map(|d| d * d).sum();
        if degree_square_sum != order {
            return Err(integrity(format!(
                "degree squares sum to {degree_square_sum}, group order is {order}"
            )));
        }

        let table = CharacterTable {
            label,
            order,
            exponent,
            class_sizes,
            class_orders,
            inverse_classes,
            degrees,
            rows,
            source,
        };
        table.verify_orthogonality()?;
        Ok(table)
    }

    /// Checks both orthogonality relations exactly, reporting the first
    /// failing pair of rows or columns.
    fn verify_orthogonality(&self) -> Result<(), ChartabError> {
        let r = self.num_classes();
        let big_order = BigInt::from(self.order);
        for i in 0..r {
            for j in i..r {
                let inner = bucketed_sum((0..r).map(|k| {
                    self.rows[i][k]
                        .mul(&self.rows[j][k].conj())
                        .scale(&BigInt::from(self.class_sizes[k]))
                }));
                let expected = if i == j { big_order.clone() } else { BigInt::from(0) };
                if inner.as_bigint() != Some(expected) {
                    return Err(ChartabError::Orthogonality {
                        table: self.label.clone(),
                        kind: OrthKind::Row,
                        first: i,
                        second: j,
                    });
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let inner =
                    bucketed_sum((0..r).map(|i| self.rows[i][k].mul(&self.rows[i][l].conj())));
                let expected = if k == l {
                    BigInt::from(self.order / self.class_sizes[k])
                } else {
                    BigInt::from(0)
                };
                if inner.as_bigint() != Some(expected) {
                    return Err(ChartabError::Orthogonality {
                        table: self.label.clone(),
                        kind: OrthKind::Column,
                        first: k,
                        second: l,
                    });
                }
            }
        }
        Ok(())
    }

    /// Group label.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Group order.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Group exponent: the least `e` with `g^e = 1` for every element.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Number of conjugacy classes (equals the number of rows).
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    /// Sizes of the conjugacy classes.
    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    /// Element orders of the class representatives.
    pub fn class_orders(&self) -> &[u64] {
        &self.class_orders
    }

    /// The inverse-class permutation (0-based).
    pub fn inverse_classes(&self) -> &[usize] {
        &self.inverse_classes
    }

    /// Character degrees, in row order.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Value of character `row` on class `class`.
    pub fn value(&self, row: usize, class: usize) -> &CycInt {
        &self.rows[row][class]
    }

    /// Full value row of a character.
    pub fn row(&self, row: usize) -> &[CycInt] {
        &self.rows[row]
    }

    /// All rows in canonical order.
    pub fn rows(&self) -> &[Vec<CycInt>] {
        &self.rows
    }

    /// Where the table came from.
    pub fn source(&self) -> TableSource {
        self.source
    }

    /// The permutation `pi` of the rows induced by complex conjugation:
    /// row `pi(i)` is the entrywise conjugate of row `i`.  Conjugating a
    /// value must agree with reading the row along inverse classes, and the
    /// conjugate of every row must appear in the table; either failure is an
    /// integrity error.  The result is an involution fixing row 0.
    pub fn conj_permutation(&self) -> Result<Vec<usize>, ChartabError> {
        let r = self.num_classes();
        let integrity = |message: String| ChartabError::TableIntegrity {
            table: self.label.clone(),
            message,
        };
        let mut perm = Vec::with_capacity(r);
        for i in 0..r {
            let conjugate: Vec<CycInt> = self.rows[i].iter().map(CycInt::conj).collect();
            for (k, value) in conjugate.iter().enumerate() {
                if *value != self.rows[i][self.inverse_classes[k]] {
                    return Err(integrity(format!(
                        "conjugate of row {i} disagrees with its inverse-class reading at class {k}"
                    )));
                }
            }
            let image = self
                .rows
                .iter()
                .position(|row| *row == conjugate)
                .ok_or_else(|| integrity(format!("conjugate of row {i} matches no row")))?;
            perm.push(image);
        }
        for i in 0..r {
            if perm[perm[i]] != i {
                return Err(integrity("conjugation permutation is not an involution".into()));
            }
        }
        if perm[0] != 0 {
            return Err(integrity("conjugation moves the trivial character".into()));
        }
        Ok(perm)
    }
}

/// Sums cyclotomic integers grouping terms by conductor first, so the many
/// cheap additions happen in small rings and only a handful of merges touch
/// the full field of the exponent.
fn bucketed_sum(terms: impl Iterator<Item = CycInt>) -> CycInt {
    let mut buckets: BTreeMap<u64, CycInt> = BTreeMap::new();
    for term in terms {
        buckets
            .entry(term.conductor())
            .and_modify(|acc| *acc = acc.add(&term))
            .or_insert(term);
    }
    buckets
        .into_values()
        .fold(CycInt::zero(), |acc, part| acc.add(&part))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> CycInt {
        CycInt::from_i64(v)
    }

    /// The table of the cyclic group of order 3, built by hand.
    fn c3_parts() -> TableParts {
        let w = CycInt::zeta(3, 1);
        let w2 = CycInt::zeta(3, 2);
        TableParts {
            label: "C3".into(),
            order: 3,
            exponent: 3,
            class_sizes: vec![1, 1, 1],
            class_orders: vec![1, 3, 3],
            inverse_classes: vec![0, 2, 1],
            rows: vec![
                vec![int(1), w.clone(), w2.clone()],
                vec![int(1), int(1), int(1)],
                vec![int(1), w2, w],
            ],
        }
    }

    #[test]
    fn accepts_a_valid_table_and_sorts_the_trivial_row_first() {
        let table = CharacterTable::from_parts(c3_parts(), TableSource::Computed).unwrap();
        assert_eq!(table.num_classes(), 3);
        assert!(table.row(0).iter().all(CycInt::is_one));
        assert_eq!(table.degrees(), &[1, 1, 1]);
        let perm = table.conj_permutation().unwrap();
        assert_eq!(perm[0], 0);
        // The two non-trivial characters of C3 are swapped by conjugation.
        assert_eq!(perm[1], 2);
        assert_eq!(perm[2], 1);
    }

    #[test]
    fn rejects_a_corrupted_value_with_the_offending_pair() {
        let mut parts = c3_parts();
        // Swap one value inside a non-trivial row: class data stays valid,
        // but the row is no longer a character.
        parts.rows[2][1] = CycInt::zeta(3, 1);
        let err = CharacterTable::from_parts(parts, TableSource::Ingested).unwrap_err();
        match err {
            ChartabError::Orthogonality { kind, .. } => assert_eq!(kind, OrthKind::Row),
            other => panic!("expected an orthogonality error, got {other}"),
        }
    }

    #[test]
    fn rejects_class_data_inconsistencies() {
        let mut parts = c3_parts();
        parts.inverse_classes = vec![0, 1, 2];
        // Inversion fixing each class contradicts the rows: conjugating a
        // value no longer matches the inverse-class reading.  The strictly
        // class-data-level checks still pass, so the error surfaces in
        // conj_permutation.
        let table = CharacterTable::from_parts(parts, TableSource::Ingested).unwrap();
        assert!(table.conj_permutation().is_err());

        let mut parts = c3_parts();
        parts.class_sizes = vec![1, 1, 2];
        assert!(CharacterTable::from_parts(parts, TableSource::Ingested).is_err());

        let mut parts = c3_parts();
        parts.exponent = 6;
        assert!(CharacterTable::from_parts(parts, TableSource::Ingested).is_err());

        let mut parts = c3_parts();
        parts.rows[1] = parts.rows[0].clone();
        assert!(CharacterTable::from_parts(parts, TableSource::Ingested).is_err());
    }

    #[test]
    fn rejects_values_outside_the_exponent_field() {
        let mut parts = c3_parts();
        parts.rows[0][1] = CycInt::zeta(5, 1);
        let err = CharacterTable::from_parts(parts, TableSource::Ingested).unwrap_err();
        assert!(matches!(err, ChartabError::TableIntegrity { .. }));
    }
}
