//! Exact restriction of characters to a subgroup along class fusion.
//!
//! Given the tables of a group and of a subgroup, plus the fusion map that
//! sends each subgroup class to the ambient class containing it, the
//! restriction of an ambient character decomposes into subgroup
//! irreducibles with multiplicities computed by the exact inner product
//! over the subgroup.  The fusion data is validated first, and any
//! arithmetic symptom of inconsistent fusion — a non-integral or negative
//! multiplicity, or a degree mismatch — is a hard error.

use group_engine::MatrixGroup;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::table::CharacterTable;
use crate::ChartabError;

/// Decomposes the restriction of character `chi` of `ambient` to the
/// subgroup described by `sub`, returning one multiplicity per subgroup
/// character, in row order.
///
/// `fusion[k]` is the 0-based index of the ambient class containing the
/// subgroup's class `k`.
pub fn restrict_and_decompose(
    ambient: &CharacterTable,
    sub: &CharacterTable,
    fusion: &[usize],
    chi: usize,
) -> Result<Vec<u64>, ChartabError> {
    let fail = |message: String| ChartabError::Fusion { message };

    if chi >= ambient.num_classes() {
        return Err(fail(format!(
            "character index {chi} out of range for {}",
            ambient.label()
        )));
    }
    validate_fusion(ambient, sub, fusion)?;

    let sub_order = BigInt::from(sub.order());
    let mut multiplicities = Vec::with_capacity(sub.num_classes());
    for psi in 0..sub.num_classes() {
        // <chi|_N, psi> = (1/|N|) sum_k |K_k| chi(fusion(k)) conj(psi(k))
        let mut acc = algebra_core::CycInt::zero();
        for k in 0..sub.num_classes() {
            let term = ambient
                .value(chi, fusion[k])
                .mul(&sub.value(psi, k).conj())
                .scale(&BigInt::from(sub.class_sizes()[k]));
            acc = acc.add(&term);
        }
        let mult = acc
            .divide_exact(&sub_order)
            .map_err(|_| {
                fail(format!(
                    "inner product of the restriction with character {psi} of {} is not divisible by the subgroup order",
                    sub.label()
                ))
            })?
            .as_bigint()
            .ok_or_else(|| {
                fail(format!(
                    "inner product of the restriction with character {psi} of {} is irrational",
                    sub.label()
                ))
            })?;
        if mult.is_negative() {
            return Err(fail(format!(
                "negative multiplicity for character {psi} of {}",
                sub.label()
            )));
        }
        multiplicities.push(mult.to_u64().ok_or_else(|| {
            fail(format!("multiplicity of character {psi} overflows 64 bits"))
        })?);
    }

    let restricted_degree: u64 = multiplicities
        .iter()
        .zip(sub.degrees())
        .map(|(m, d)| m * d)
        .sum();
    if restricted_degree != ambient.degrees()[chi] {
        return Err(fail(format!(
            "constituent degrees sum to {restricted_degree}, the restricted character has degree {}",
            ambient.degrees()[chi]
        )));
    }
    Ok(multiplicities)
}

/// Structural checks on fusion data against the two tables.
fn validate_fusion(
    ambient: &CharacterTable,
    sub: &CharacterTable,
    fusion: &[usize],
) -> Result<(), ChartabError> {
    let fail = |message: String| ChartabError::Fusion { message };

    if fusion.len() != sub.num_classes() {
        return Err(fail(format!(
            "fusion lists {} classes, {} has {}",
            fusion.len(),
            sub.label(),
            sub.num_classes()
        )));
    }
    if ambient.order() % sub.order() != 0 {
        return Err(fail(format!(
            "order of {} does not divide order of {}",
            sub.label(),
            ambient.label()
        )));
    }
    if fusion[0] != 0 {
        return Err(fail("fusion must send the identity class to the identity class".into()));
    }
    let mut fused_sizes = vec![0u64; ambient.num_classes()];
    for (k, &target) in fusion.iter().enumerate() {
        if target >= ambient.num_classes() {
            return Err(fail(format!(
                "fusion sends class {k} to {target}, outside the ambient table"
            )));
        }
        if sub.class_orders()[k] != ambient.class_orders()[target] {
            return Err(fail(format!(
                "class {k} has element order {}, its image has {}",
                sub.class_orders()[k],
                ambient.class_orders()[target]
            )));
        }
        fused_sizes[target] += sub.class_sizes()[k];
    }
    for (target, &total) in fused_sizes.iter().enumerate() {
        if total > ambient.class_sizes()[target] {
            return Err(fail(format!(
                "classes fused into ambient class {target} have {total} elements, the class has {}",
                ambient.class_sizes()[target]
            )));
        }
    }
    Ok(())
}

/// Computes the fusion map of an enumerated subgroup into an enumerated
/// ambient group by locating each subgroup class representative.
pub fn matrix_fusion(
    ambient: &MatrixGroup,
    sub: &MatrixGroup,
) -> Result<Vec<usize>, ChartabError> {
    (0..sub.num_classes())
        .map(|k| {
            let rep = sub.class_representative(k);
            ambient.class_of_element(&rep).ok_or_else(|| ChartabError::Fusion {
                message: format!("class {k} representative is not in the ambient group"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dixon::compute_table_for;
    use algebra_core::Matrix;
    use group_engine::{Family, GroupSpec, DEFAULT_ENUMERATION_CAP};

    fn sl2_3() -> MatrixGroup {
        let spec = GroupSpec::new(Family::SL, 2, 3).unwrap();
        MatrixGroup::enumerate(&spec, DEFAULT_ENUMERATION_CAP).unwrap()
    }

    fn quaternion_subgroup(ambient: &MatrixGroup) -> MatrixGroup {
        let field = ambient.field().clone();
        let a = Matrix::from_i64(&field, &[vec![0, 2], vec![1, 0]]);
        let b = Matrix::from_i64(&field, &[vec![1, 1], vec![1, 2]]);
        MatrixGroup::from_generators(&[a, b], 100).unwrap()
    }

    #[test]
    fn identity_fusion_decomposes_every_character_as_itself() {
        let group = sl2_3();
        let table = compute_table_for(&group).unwrap();
        let fusion = matrix_fusion(&group, &group).unwrap();
        assert_eq!(fusion, vec![0, 1, 2, 3, 4, 5, 6]);
        for chi in 0..table.num_classes() {
            let mults = restrict_and_decompose(&table, &table, &fusion, chi).unwrap();
            let mut expected = vec![0; table.num_classes()];
            expected[chi] = 1;
            assert_eq!(mults, expected);
        }
    }

    #[test]
    fn restriction_to_the_quaternion_subgroup() {
        let group = sl2_3();
        let ambient = compute_table_for(&group).unwrap();
        let q8 = quaternion_subgroup(&group);
        let sub = compute_table_for(&q8).unwrap();
        let fusion = matrix_fusion(&group, &q8).unwrap();

        // Q8 is a union of SL2(3) classes: identity, centre, and the six
        // order-4 elements, so the three order-4 classes of Q8 fuse into
        // the single order-4 class of SL2(3).
        assert_eq!(fusion[0], 0);
        assert_eq!(sub.class_orders(), &[1, 2, 4, 4, 4]);

        // The trivial character restricts trivially.
        let mults = restrict_and_decompose(&ambient, &sub, &fusion, 0).unwrap();
        assert_eq!(mults, vec![1, 0, 0, 0, 0]);

        // Each degree-2 character of SL2(3) restricts to the unique
        // degree-2 character of Q8.
        for chi in 3..6 {
            assert_eq!(ambient.degrees()[chi], 2);
            let mults = restrict_and_decompose(&ambient, &sub, &fusion, chi).unwrap();
            assert_eq!(mults, vec![0, 0, 0, 0, 1]);
        }

        // The degree-3 character restricts to the sum of the three
        // non-trivial linear characters.
        let mults = restrict_and_decompose(&ambient, &sub, &fusion, 6).unwrap();
        assert_eq!(mults, vec![0, 1, 1, 1, 0]);
    }

    #[test]
    fn inconsistent_fusion_is_rejected() {
        let group = sl2_3();
        let table = compute_table_for(&group).unwrap();

        // Swapping the two order-3 classes breaks the decomposition even
        // though every elementwise check (orders, sizes) still passes.
        let mut fusion: Vec<usize> = (0..7).collect();
        fusion.swap(2, 3);
        let result = (0..7)
            .map(|chi| restrict_and_decompose(&table, &table, &fusion, chi))
            .collect::<Result<Vec<_>, _>>();
        assert!(result.is_err());

        // Wrong element order is caught structurally.
        let fusion = vec![0, 1, 2, 3, 4, 5, 4];
        assert!(matches!(
            restrict_and_decompose(&table, &table, &fusion, 0),
            Err(ChartabError::Fusion { .. })
        ));

        // Wrong length is caught structurally.
        let fusion = vec![0, 1, 2];
        assert!(restrict_and_decompose(&table, &table, &fusion, 0).is_err());
    }
}
