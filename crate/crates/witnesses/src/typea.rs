//! Witnesses in general linear and unitary groups.
//!
//! The element carries the eigenvalue multiset {λ, λ⁻¹, 1, …} for a root
//! of unity λ of odd order m > 1 dividing q² − 1, realized inside the
//! group along with an explicit conjugator inverting it.  Preference
//! order: the largest odd divisor of q − ε first, then of q + ε.  Over
//! GF(3) neither exists, and a four-dimensional block of order five
//! (eigenvalues λ, λ², λ³, λ⁴) is used instead, which needs n ≥ 4; for
//! n ≤ 3 over GF(3) there is no witness at all, and that verdict is part
//! of the contract.

use algebra_core::{FieldDescriptor, FieldElement, Matrix};
use group_engine::embeddings::flip_inverse_transpose;
use group_engine::{Family, GroupSpec, MatrixGroup};

use crate::family::{validate_witness, Construction, ConstructedWitness, Trace};
use crate::WitnessError;

pub(crate) fn odd_part(mut x: u64) -> u64 {
    while x % 2 == 0 {
        x /= 2;
    }
    x
}

/// Constructs the linear (`eps = +1`) or unitary (`eps = -1`) witness, or
/// reports that none exists (exactly for q = 3 with n ≤ 3).
pub fn construct_type_a(n: usize, q: u64, eps: i64) -> Result<Construction, WitnessError> {
    if eps != 1 && eps != -1 {
        return Err(WitnessError::InvalidParameters(format!(
            "eps must be +1 or -1, got {eps}"
        )));
    }
    let family = if eps == 1 { Family::GL } else { Family::GU };
    let spec = GroupSpec::new(family, n, q)?;
    let construction = if eps == 1 {
        linear_witness(&spec)?
    } else {
        unitary_witness(&spec)?
    };
    if let Construction::Witness(w) = &construction {
        validate_witness(w)?;
    }
    Ok(construction)
}

/// Unwraps a linear witness for parameters where one is guaranteed; used
/// by the orthogonal and symplectic constructions.
pub(crate) fn required_linear_witness(
    n: usize,
    q: u64,
) -> Result<ConstructedWitness, WitnessError> {
    match construct_type_a(n, q, 1)? {
        Construction::Witness(w) => Ok(w),
        Construction::NoWitness { reason } => Err(WitnessError::Construction(format!(
            "the underlying rank-{n} linear witness over GF({q}) is missing: {reason}"
        ))),
    }
}

fn linear_witness(spec: &GroupSpec) -> Result<Construction, WitnessError> {
    let n = spec.rank();
    let q = spec.q();
    let base = spec.entry_field()?;

    let m1 = odd_part(q - 1);
    if m1 > 1 {
        let lambda = base.primitive_root_of_unity(m1)?;
        return Ok(Construction::Witness(diagonal_witness(
            spec,
            &lambda,
            m1,
            "diagonal torus element",
        )?));
    }

    let m2 = odd_part(q + 1);
    if m2 > 1 {
        // λ lives in the quadratic extension; its trace λ + λ⁻¹ descends
        // to the base field and determines a 2x2 block of determinant one.
        let quad = FieldDescriptor::get(spec.characteristic(), 2 * base.degree())?;
        let lambda = quad.primitive_root_of_unity(m2)?;
        let t = lambda
            .add(&lambda.inverse()?)
            .project(&base)?
            .ok_or_else(|| {
                WitnessError::Construction(
                    "trace of the quadratic torus eigenvalue did not descend".to_string(),
                )
            })?;
        let block = companion_of_quadratic(&base, &t);
        // The coordinate flip conjugates this block to its inverse.
        let flip = Matrix::antidiag(&base, 2);
        let coords = [0, n - 1];
        return Ok(Construction::Witness(ConstructedWitness {
            spec: spec.clone(),
            element: block.embed_at(n, &coords),
            conjugator: flip.embed_at(n, &coords),
            trace: Trace {
                route: "quadratic torus block at the outer coordinates".to_string(),
                m: Some(m2),
                lambda_order: Some(m2),
                coordinates: coords.to_vec(),
            },
        }));
    }

    // q = 3: both q − 1 and q + 1 are powers of two.
    if n < 4 {
        return Ok(no_witness_over_gf3(n, q));
    }
    Ok(Construction::Witness(quintic_witness(spec)?))
}

fn unitary_witness(spec: &GroupSpec) -> Result<Construction, WitnessError> {
    let n = spec.rank();
    let q = spec.q();
    let entry = spec.entry_field()?;

    let m1 = odd_part(q + 1);
    if m1 > 1 {
        // The norm-one circle has order q + 1; its odd part is realized by
        // a 2x2 unitary block with characteristic polynomial
        // x² − (λ + λ⁻¹)x + 1, found by scanning the rank-2 unitary group.
        let lambda = entry.primitive_root_of_unity(m1)?;
        let t = lambda.add(&lambda.pow(q));
        let rank2 = GroupSpec::new(Family::GU, 2, q)?;
        let group = MatrixGroup::enumerate(&rank2, 100_000)?;
        let one = entry.one();
        let mut found = None;
        for idx in 0..group.order() {
            let cand = group.element(idx as u32);
            if cand.trace() == t && cand.det() == one {
                found = Some(cand);
                break;
            }
        }
        let block = found.ok_or_else(|| {
            WitnessError::Construction(
                "no rank-2 unitary element with the requested characteristic polynomial"
                    .to_string(),
            )
        })?;
        let inverter = group.transporter(&block, &block.inverse()?).ok_or_else(|| {
            WitnessError::Construction(
                "the rank-2 unitary block is not inverted inside its own group".to_string(),
            )
        })?;
        let coords = [0, n - 1];
        return Ok(Construction::Witness(ConstructedWitness {
            spec: spec.clone(),
            element: block.embed_at(n, &coords),
            conjugator: inverter.embed_at(n, &coords),
            trace: Trace {
                route: "norm-one circle block at the outer coordinates".to_string(),
                m: Some(m1),
                lambda_order: Some(m1),
                coordinates: coords.to_vec(),
            },
        }));
    }

    let m2 = odd_part(q - 1);
    if m2 > 1 {
        // Roots of unity of order dividing q − 1 are fixed by the
        // conjugation x ↦ x^q, so the diagonal realization is unitary.
        let lambda = entry.primitive_root_of_unity(m2)?;
        return Ok(Construction::Witness(diagonal_witness(
            spec,
            &lambda,
            m2,
            "diagonal torus element over the fixed subfield",
        )?));
    }

    // q = 3 again.
    if n < 4 {
        return Ok(no_witness_over_gf3(n, q));
    }
    Ok(Construction::Witness(unitary_quintic_witness(spec)?))
}

fn no_witness_over_gf3(n: usize, q: u64) -> Construction {
    Construction::NoWitness {
        reason: format!(
            "q = {q}: neither q - 1 nor q + 1 has an odd divisor above one, and the \
             order-five block needs n >= 4 (n = {n})"
        ),
    }
}

/// diag(λ, 1, …, 1, λ⁻¹) with the coordinate swap (first ↔ last) as the
/// inverting conjugator.  Works verbatim in the linear and unitary cases.
fn diagonal_witness(
    spec: &GroupSpec,
    lambda: &FieldElement,
    m: u64,
    route: &str,
) -> Result<ConstructedWitness, WitnessError> {
    let field = lambda.field().clone();
    let n = spec.rank();
    let mut entries = vec![field.one(); n];
    entries[0] = lambda.clone();
    entries[n - 1] = lambda.inverse()?;
    let element = Matrix::diagonal(&field, &entries);

    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, n - 1);
    let conjugator = Matrix::permutation(&field, &perm);

    Ok(ConstructedWitness {
        spec: spec.clone(),
        element,
        conjugator,
        trace: Trace {
            route: route.to_string(),
            m: Some(m),
            lambda_order: Some(m),
            coordinates: vec![0, n - 1],
        },
    })
}

/// Companion matrix of x² − t·x + 1; its determinant is one, so the
/// antidiagonal flip carries it to its inverse.
fn companion_of_quadratic(field: &std::sync::Arc<FieldDescriptor>, t: &FieldElement) -> Matrix {
    Matrix::from_rows(
        field,
        &[
            vec![field.zero(), field.from_i64(-1)],
            vec![field.one(), t.clone()],
        ],
    )
}

/// The order-five witness over GF(3) for n ≥ 4: the companion matrix of
/// x⁴ + x³ + x² + x + 1 placed at the leading coordinates.  The polynomial
/// is irreducible over GF(3), so every nonzero vector is cyclic for the
/// block and an explicit basis change inverts it.
fn quintic_witness(spec: &GroupSpec) -> Result<ConstructedWitness, WitnessError> {
    let field = spec.entry_field()?;
    let n = spec.rank();
    let block = Matrix::from_i64(
        &field,
        &[
            vec![0, 0, 0, -1],
            vec![1, 0, 0, -1],
            vec![0, 1, 0, -1],
            vec![0, 0, 1, -1],
        ],
    );
    let inverter = cyclic_basis_inverter(&block)?;
    let coords = [0, 1, 2, 3];
    Ok(ConstructedWitness {
        spec: spec.clone(),
        element: block.embed_at(n, &coords),
        conjugator: inverter.embed_at(n, &coords),
        trace: Trace {
            route: "order-five companion block at the leading coordinates".to_string(),
            m: Some(5),
            lambda_order: Some(5),
            coordinates: coords.to_vec(),
        },
    })
}

/// Maps the standard cyclic basis of `block` onto one for its inverse:
/// columns e₀, C⁻¹e₀, C⁻²e₀, C⁻³e₀.  Because the minimal polynomial is
/// the same palindromic irreducible quartic for both, this basis change P
/// satisfies P·C·P⁻¹ = C⁻¹.
fn cyclic_basis_inverter(block: &Matrix) -> Result<Matrix, WitnessError> {
    let field = block.field().clone();
    let dim = block.nrows();
    let inverse = block.inverse()?;
    let mut vector: Vec<FieldElement> = vec![field.zero(); dim];
    vector[0] = field.one();
    let mut result = Matrix::zeros(&field, dim, dim);
    for col in 0..dim {
        for row in 0..dim {
            result.set(row, col, vector[row].clone());
        }
        vector = inverse.mul_vec(&vector);
    }
    let candidate_inverse = result.inverse()?;
    if result.mul(block).mul(&candidate_inverse) != inverse {
        return Err(WitnessError::Construction(
            "cyclic basis change does not invert the companion block".to_string(),
        ));
    }
    Ok(result)
}

/// The order-five witness in a unitary group over GF(3) for n ≥ 4: a 2x2
/// block M with eigenvalues {λ, λ⁴} at the leading coordinates, paired at
/// the trailing coordinates with the unique completion that makes the
/// whole matrix unitary.  The partner block picks up the remaining
/// eigenvalues {λ², λ³}, and the double coordinate swap inverts both
/// blocks at once.
fn unitary_quintic_witness(spec: &GroupSpec) -> Result<ConstructedWitness, WitnessError> {
    let entry = spec.entry_field()?;
    let n = spec.rank();
    let k = spec.base_field()?.degree();

    let quartic = FieldDescriptor::get(spec.characteristic(), 2 * entry.degree())?;
    let lambda = quartic.primitive_root_of_unity(5)?;
    let t = lambda
        .add(&lambda.inverse()?)
        .project(&entry)?
        .ok_or_else(|| {
            WitnessError::Construction(
                "trace of the order-five eigenvalue did not descend to the entry field"
                    .to_string(),
            )
        })?;
    let block = companion_of_quadratic(&entry, &t);
    let partner = flip_inverse_transpose(&block.apply_frobenius(k));

    let element = block
        .embed_at(n, &[0, 1])
        .mul(&partner.embed_at(n, &[n - 2, n - 1]));

    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, 1);
    perm.swap(n - 2, n - 1);
    let conjugator = Matrix::permutation(&entry, &perm);

    Ok(ConstructedWitness {
        spec: spec.clone(),
        element,
        conjugator,
        trace: Trace {
            route: "conjugation-paired order-five blocks at the outer coordinates".to_string(),
            m: Some(5),
            lambda_order: Some(5),
            coordinates: vec![0, 1, n - 2, n - 1],
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness(n: usize, q: u64, eps: i64) -> ConstructedWitness {
        match construct_type_a(n, q, eps).unwrap() {
            Construction::Witness(w) => w,
            Construction::NoWitness { reason } => {
                panic!("expected a witness for ({n}, {q}, {eps}): {reason}")
            }
        }
    }

    fn assert_no_witness(n: usize, q: u64, eps: i64) {
        match construct_type_a(n, q, eps).unwrap() {
            Construction::NoWitness { .. } => {}
            Construction::Witness(_) => panic!("expected no witness for ({n}, {q}, {eps})"),
        }
    }

    #[test]
    fn gf3_low_rank_has_no_witness_and_rank_four_does() {
        for eps in [1, -1] {
            assert_no_witness(2, 3, eps);
            assert_no_witness(3, 3, eps);
            assert!(construct_type_a(4, 3, eps).unwrap().is_witness());
        }
    }

    #[test]
    fn rank_two_over_gf5_uses_an_order_three_quadratic_block() {
        let w = witness(2, 5, 1);
        assert_eq!(w.element.multiplicative_order(10).unwrap(), 3);
        assert_eq!(w.trace.m, Some(3));
        let (_, roots) = w.element.eigenvalue_multiset().unwrap();
        for (root, multiplicity) in &roots {
            assert_eq!(*multiplicity, 1);
            assert_eq!(root.multiplicative_order(), 3);
        }
    }

    #[test]
    fn rank_four_over_gf3_has_order_five_and_quintic_characteristic_polynomial() {
        let w = witness(4, 3, 1);
        assert_eq!(w.element.multiplicative_order(10).unwrap(), 5);
        let field = w.element.field().clone();
        let coeffs = w.element.charpoly();
        let expected = algebra_core::Poly::new(
            &field,
            vec![field.one(), field.one(), field.one(), field.one(), field.one()],
        );
        assert_eq!(coeffs, expected);
    }

    #[test]
    fn diagonal_route_is_used_over_gf7() {
        let w = witness(3, 7, 1);
        assert_eq!(w.trace.m, Some(3));
        assert_eq!(w.element.multiplicative_order(10).unwrap(), 3);
        // diag entries: lambda, 1, lambda^{-1}
        assert!(w.element.at(0, 0).mul(w.element.at(2, 2)).is_one());
        assert!(w.element.at(1, 1).is_one());
    }

    #[test]
    fn conjugators_invert_across_routes_and_signs() {
        for (n, q, eps) in [
            (2, 5, 1),
            (3, 7, 1),
            (6, 9, 1),
            (5, 3, 1),
            (2, 5, -1),
            (3, 7, -1),
            (2, 9, -1),
            (4, 3, -1),
            (5, 3, -1),
        ] {
            let w = witness(n, q, eps);
            assert!(w.spec.contains(&w.element).unwrap(), "({n},{q},{eps}) element");
            assert!(
                w.spec.contains(&w.conjugator).unwrap(),
                "({n},{q},{eps}) conjugator"
            );
            let conjugated = w
                .conjugator
                .mul(&w.element)
                .mul(&w.conjugator.inverse().unwrap());
            assert_eq!(conjugated, w.element.inverse().unwrap(), "({n},{q},{eps})");
        }
    }

    #[test]
    fn unitary_circle_block_over_gf5_has_order_three() {
        let w = witness(2, 5, -1);
        assert_eq!(w.element.multiplicative_order(10).unwrap(), 3);
        assert_eq!(w.trace.m, Some(3));
    }

    #[test]
    fn unitary_witness_over_gf9_uses_the_order_five_circle() {
        let w = witness(3, 9, -1);
        assert_eq!(w.element.multiplicative_order(10).unwrap(), 5);
        assert_eq!(w.trace.m, Some(5));
    }

    #[test]
    fn unitary_quintic_over_gf3_has_all_four_primitive_fifth_roots() {
        let w = witness(4, 3, -1);
        assert_eq!(w.element.multiplicative_order(10).unwrap(), 5);
        let (_, roots) = w.element.eigenvalue_multiset().unwrap();
        let mut fifth = 0;
        for (root, multiplicity) in &roots {
            if root.multiplicative_order() == 5 {
                fifth += *multiplicity;
            }
        }
        assert_eq!(fifth, 4);
    }

    #[test]
    fn rejects_a_bad_sign() {
        assert!(construct_type_a(3, 5, 0).is_err());
        assert!(construct_type_a(3, 5, 2).is_err());
    }

    #[test]
    fn rejects_bad_group_parameters() {
        assert!(construct_type_a(1, 5, 1).is_err());
        assert!(construct_type_a(3, 4, 1).is_err());
        assert!(construct_type_a(3, 15, 1).is_err());
    }
}
