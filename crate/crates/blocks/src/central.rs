//! Central characters of a table, verified to be algebraic integers.

use algebra_core::CycInt;
use chartab::CharacterTable;
use num_bigint::BigInt;

use crate::BlocksError;

/// Computes the matrix of central-character values: row `i`, column `k`
/// holds `omega_i(K_k) = |K_k| * chi_i(g_k) / chi_i(1)` as an exact
/// cyclotomic integer.  The division must be exact in the cyclotomic ring —
/// a non-integral quotient means the table is not a character table.
pub fn central_characters(table: &CharacterTable) -> Result<Vec<Vec<CycInt>>, BlocksError> {
    let r = table.num_classes();
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let degree = BigInt::from(table.degrees()[i]);
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let scaled = table
                .value(i, k)
                .scale(&BigInt::from(table.class_sizes()[k]));
            let omega = scaled.divide_exact(&degree).map_err(|_| BlocksError::Integrity {
                table: table.label().to_string(),
                message: format!(
                    "central character of row {i} at class {k} is not an algebraic integer"
                ),
            })?;
            row.push(omega);
        }
        if !row[0].is_one() {
            return Err(BlocksError::Integrity {
                table: table.label().to_string(),
                message: format!("central character of row {i} is not 1 at the identity"),
            });
        }
        rows.push(row);
    }
    Ok(rows)
}
