//! Witnesses in even orthogonal groups of either sign.
//!
//! Plus type: the doubling map g ↦ diag(g, γ(g)) preserves the
//! antidiagonal symmetric form as well as the symplectic one, so the
//! linear witness of the same rank doubles directly.  Minus type: the
//! linear witness one rank down embeds via g ↦ diag(g, I₂, γ(g)), whose
//! middle identity block sits exactly on the two twisted coordinates.
//! The one case where that inner witness does not exist — rank four over
//! GF(3) — extends the order-five trace-form model by a hyperbolic-free
//! diagonal plane instead, transports it onto the standard form in six
//! dimensions, and spreads the result over the six untwisted coordinates
//! of the eight-dimensional group, where the full antidiagonal (an even
//! permutation in dimension eight, hence of determinant one) serves as
//! the inverting conjugator.

use algebra_core::Matrix;
use group_engine::congruence::involution_transport;
use group_engine::embeddings::{phi_paired, psi_minus};
use group_engine::{Family, GroupSpec};

use crate::family::{validate_witness, Construction, ConstructedWitness, Trace};
use crate::torus::trace_form_model;
use crate::typea::required_linear_witness;
use crate::WitnessError;

/// Constructs the witness for the 2n-dimensional orthogonal group of the
/// given sign over GF(q); requires n ≥ 4.
pub fn construct_type_d(n: usize, q: u64, eps: i64) -> Result<Construction, WitnessError> {
    let family = match eps {
        1 => Family::SOplus,
        -1 => Family::SOminus,
        _ => {
            return Err(WitnessError::InvalidParameters(format!(
                "eps must be +1 or -1, got {eps}"
            )))
        }
    };
    let spec = GroupSpec::new(family, n, q)?;
    let w = if eps == 1 {
        let inner = required_linear_witness(n, q)?;
        ConstructedWitness {
            spec: spec.clone(),
            element: phi_paired(&inner.element),
            conjugator: phi_paired(&inner.conjugator),
            trace: Trace {
                route: format!("doubling embedding of: {}", inner.trace.route),
                m: inner.trace.m,
                lambda_order: inner.trace.lambda_order,
                coordinates: Vec::new(),
            },
        }
    } else if (n, q) == (4, 3) {
        eight_dimensional_minus_gf3_witness(&spec)?
    } else {
        let inner = required_linear_witness(n - 1, q)?;
        let entry = spec.entry_field()?;
        let element = psi_minus(&inner.element.embed(&entry)?);
        let conjugator = psi_minus(&inner.conjugator.embed(&entry)?);
        ConstructedWitness {
            spec: spec.clone(),
            element,
            conjugator,
            trace: Trace {
                route: format!(
                    "rank-lowered doubling embedding of: {}",
                    inner.trace.route
                ),
                m: inner.trace.m,
                lambda_order: inner.trace.lambda_order,
                coordinates: Vec::new(),
            },
        }
    };
    validate_witness(&w)?;
    Ok(Construction::Witness(w))
}

/// The minus-type witness in dimension eight over GF(3).  The trace-form
/// model is extended by a diagonal plane fixed by a coordinate swap; the
/// transport identity J·T = T·S again makes the target form the
/// conjugator of the transported element, which is then placed on the
/// six coordinates away from the twisted middle pair.
fn eight_dimensional_minus_gf3_witness(
    spec: &GroupSpec,
) -> Result<ConstructedWitness, WitnessError> {
    let model = trace_form_model()?;
    let field = &model.field;
    let entry = spec.entry_field()?;
    let j6 = Matrix::antidiag(field, 6);
    let swap = Matrix::permutation(field, &[1, 0]);
    let id2 = Matrix::identity(field, 2);

    // The plane scalar must be shared by both entries so that the swap is
    // an isometry; both square classes are tried.
    for scalar in [2i64, 1] {
        let plane = Matrix::from_i64(field, &[vec![scalar, 0], vec![0, scalar]]);
        let form = Matrix::block_diag(&[&model.gram, &plane]);
        let element_model = Matrix::block_diag(&[&model.mult, &id2]);
        let involution_model = Matrix::block_diag(&[&model.inv, &swap]);
        if let Some(t) = involution_transport(&j6, &form, &involution_model)? {
            let transported = t.mul(&element_model).mul(&t.inverse()?);
            let coords = [0, 1, 2, 5, 6, 7];
            let element = transported.embed_at(8, &coords).embed(&entry)?;
            let conjugator = Matrix::antidiag(&entry, 8);
            return Ok(ConstructedWitness {
                spec: spec.clone(),
                element,
                conjugator,
                trace: Trace {
                    route: format!(
                        "trace-form transport with a diagonal plane (scalar {scalar}), spread \
                         around the twisted coordinates"
                    ),
                    m: Some(5),
                    lambda_order: Some(5),
                    coordinates: coords.to_vec(),
                },
            });
        }
    }
    Err(WitnessError::Construction(
        "no plane completion made the extended trace form congruent to the standard form"
            .to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness(n: usize, q: u64, eps: i64) -> ConstructedWitness {
        match construct_type_d(n, q, eps).unwrap() {
            Construction::Witness(w) => w,
            Construction::NoWitness { reason } => panic!("({n}, {q}, {eps}): {reason}"),
        }
    }

    #[test]
    fn plus_type_over_gf3_doubles_the_order_five_linear_witness() {
        let w = witness(4, 3, 1);
        assert_eq!(w.spec.to_string(), "SO8+(3)");
        assert_eq!(w.element.multiplicative_order(6).unwrap(), 5);
        assert!(w.spec.contains(&w.element).unwrap());
        assert!(w.spec.contains(&w.conjugator).unwrap());
    }

    #[test]
    fn minus_type_over_gf3_uses_the_transport_and_the_full_antidiagonal() {
        let w = witness(4, 3, -1);
        assert_eq!(w.spec.to_string(), "SO8-(3)");
        assert_eq!(w.element.multiplicative_order(6).unwrap(), 5);
        let field = w.element.field().clone();
        assert_eq!(w.conjugator, Matrix::antidiag(&field, 8));
        assert!(w.spec.contains(&w.element).unwrap());
        assert!(w.spec.contains(&w.conjugator).unwrap());
    }

    #[test]
    fn minus_type_rank_five_over_gf3_lowers_to_the_rank_four_linear_witness() {
        let w = witness(5, 3, -1);
        assert_eq!(w.spec.to_string(), "SO10-(3)");
        assert_eq!(w.element.multiplicative_order(6).unwrap(), 5);
        assert!(w.spec.contains(&w.element).unwrap());
        assert!(w.spec.contains(&w.conjugator).unwrap());
    }

    #[test]
    fn minus_type_over_gf5_lowers_rank() {
        let w = witness(4, 5, -1);
        assert_eq!(w.spec.to_string(), "SO8-(5)");
        assert_eq!(w.element.multiplicative_order(6).unwrap(), 3);
        assert!(w.spec.contains(&w.element).unwrap());
        assert!(w.spec.contains(&w.conjugator).unwrap());
    }

    #[test]
    fn both_signs_work_across_the_small_grid() {
        for (n, q) in [(4, 5), (4, 7), (5, 9)] {
            for eps in [1, -1] {
                let w = witness(n, q, eps);
                assert_eq!(w.element.nrows(), 2 * n, "({n},{q},{eps})");
                let order = w.element.multiplicative_order(12).unwrap();
                assert!(order % 2 == 1 && order > 1, "({n},{q},{eps})");
            }
        }
    }

    #[test]
    fn rejects_rank_below_four_and_bad_signs() {
        assert!(construct_type_d(3, 5, 1).is_err());
        assert!(construct_type_d(4, 5, 0).is_err());
    }
}
