//! Witnesses in odd orthogonal groups.
//!
//! For most parameters the linear witness of the same rank embeds via
//! g ↦ diag(g, 1, γ(g)).  Over GF(3) at ranks two and three the
//! five-dimensional group is handled directly: the order-five trace-form
//! model is extended by a one-dimensional block and transported onto the
//! standard antidiagonal form J₅.  The transport T satisfies both
//! Tᵀ·J₅·T = G and J₅·T = T·S, so J₅ simultaneously plays the role of the
//! invariant form and of the conjugator inverting the transported
//! element.  Rank three embeds the five-dimensional witness in the middle
//! coordinates, where the seven-dimensional form restricts to J₅.

use algebra_core::Matrix;
use group_engine::congruence::involution_transport;
use group_engine::embeddings::psi_odd;
use group_engine::{Family, GroupSpec};

use crate::family::{validate_witness, Construction, ConstructedWitness, Trace};
use crate::torus::trace_form_model;
use crate::typea::required_linear_witness;
use crate::WitnessError;

/// Constructs the witness for the (2n+1)-dimensional orthogonal group
/// over GF(q).
pub fn construct_type_b(n: usize, q: u64) -> Result<Construction, WitnessError> {
    let spec = GroupSpec::new(Family::SOodd, n, q)?;
    let w = if (n, q) == (2, 3) {
        five_dimensional_gf3_witness(&spec)?
    } else if (n, q) == (3, 3) {
        let rank2 = GroupSpec::new(Family::SOodd, 2, 3)?;
        let inner = five_dimensional_gf3_witness(&rank2)?;
        let coords = [1, 2, 3, 4, 5];
        ConstructedWitness {
            spec: spec.clone(),
            element: inner.element.embed_at(7, &coords),
            conjugator: inner.conjugator.embed_at(7, &coords),
            trace: Trace {
                route: "middle embedding of the five-dimensional witness".to_string(),
                m: inner.trace.m,
                lambda_order: inner.trace.lambda_order,
                coordinates: coords.to_vec(),
            },
        }
    } else {
        let inner = required_linear_witness(n, q)?;
        ConstructedWitness {
            spec: spec.clone(),
            element: psi_odd(&inner.element),
            conjugator: psi_odd(&inner.conjugator),
            trace: Trace {
                route: format!("doubling embedding of: {}", inner.trace.route),
                m: inner.trace.m,
                lambda_order: inner.trace.lambda_order,
                coordinates: Vec::new(),
            },
        }
    };
    validate_witness(&w)?;
    Ok(Construction::Witness(w))
}

/// The five-dimensional witness over GF(3): extend the trace-form model
/// (form, order-five map, inverting involution) by a one-dimensional
/// block, transport onto the antidiagonal form, and read off the
/// conjugator from the transport identity.
fn five_dimensional_gf3_witness(spec: &GroupSpec) -> Result<ConstructedWitness, WitnessError> {
    let model = trace_form_model()?;
    let field = &model.field;
    let j5 = Matrix::antidiag(field, 5);
    let id1 = Matrix::identity(field, 1);

    // The scalar extending the form is chosen so that the combined form
    // becomes congruent to the standard one; both square classes are tried.
    for scalar in [2i64, 1] {
        let point = Matrix::from_i64(field, &[vec![scalar]]);
        let form = Matrix::block_diag(&[&point, &model.gram]);
        let element_model = Matrix::block_diag(&[&id1, &model.mult]);
        let involution_model = Matrix::block_diag(&[&id1, &model.inv]);
        if let Some(t) = involution_transport(&j5, &form, &involution_model)? {
            let element = t.mul(&element_model).mul(&t.inverse()?);
            return Ok(ConstructedWitness {
                spec: spec.clone(),
                element,
                conjugator: j5,
                trace: Trace {
                    route: format!(
                        "trace-form transport onto the standard form (scalar block {scalar})"
                    ),
                    m: Some(5),
                    lambda_order: Some(5),
                    coordinates: Vec::new(),
                },
            });
        }
    }
    Err(WitnessError::Construction(
        "no scalar completion made the extended trace form congruent to the standard form"
            .to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Instant;

    fn witness(n: usize, q: u64) -> ConstructedWitness {
        match construct_type_b(n, q).unwrap() {
            Construction::Witness(w) => w,
            Construction::NoWitness { reason } => panic!("({n}, {q}): {reason}"),
        }
    }

    #[test]
    fn five_dimensional_gf3_witness_is_inverted_by_the_antidiagonal_quickly() {
        let start = Instant::now();
        let w = witness(2, 3);
        assert!(start.elapsed().as_secs() < 1, "took {:?}", start.elapsed());
        assert_eq!(w.spec.to_string(), "SO5(3)");
        assert_eq!(w.element.multiplicative_order(6).unwrap(), 5);
        let field = w.element.field().clone();
        assert_eq!(w.conjugator, Matrix::antidiag(&field, 5));
        assert!(w.spec.contains(&w.element).unwrap());
    }

    #[test]
    fn five_dimensional_witness_has_four_primitive_fifth_roots_and_a_one() {
        let w = witness(2, 3);
        let (_, roots) = w.element.eigenvalue_multiset().unwrap();
        let mut ones = 0;
        let mut fifth = 0;
        for (root, multiplicity) in &roots {
            match root.multiplicative_order() {
                1 => ones += multiplicity,
                5 => fifth += multiplicity,
                other => panic!("unexpected eigenvalue order {other}"),
            }
        }
        assert_eq!((ones, fifth), (1, 4));
    }

    #[test]
    fn seven_dimensional_gf3_witness_embeds_in_the_middle() {
        let w = witness(3, 3);
        assert_eq!(w.spec.to_string(), "SO7(3)");
        assert_eq!(w.element.multiplicative_order(6).unwrap(), 5);
        assert_eq!(w.trace.coordinates, vec![1, 2, 3, 4, 5]);
        assert!(w.spec.contains(&w.element).unwrap());
        assert!(w.spec.contains(&w.conjugator).unwrap());
    }

    #[test]
    fn doubling_route_lands_in_the_odd_orthogonal_group() {
        for (n, q) in [(2, 5), (3, 7), (4, 3), (2, 9)] {
            let w = witness(n, q);
            assert_eq!(w.element.nrows(), 2 * n + 1);
            assert!(w.spec.contains(&w.element).unwrap(), "({n},{q})");
            assert!(w.spec.contains(&w.conjugator).unwrap(), "({n},{q})");
            assert!(w.element.det().is_one(), "({n},{q})");
        }
    }
}
