//! Witnesses in symplectic groups.
//!
//! For most parameters the linear witness of the same rank doubles into
//! the symplectic group via g ↦ diag(g, γ(g)), where γ is the flipped
//! inverse transpose.  Over GF(3) at ranks two and three no such linear
//! witness exists, so the rank-two group is searched directly: any
//! symmetric member of a symplectic group is conjugated to its inverse by
//! the invariant form itself, so a symmetric element of order five comes
//! with its conjugator for free, and the rank-three case embeds it in a
//! corner where the invariant form restricts to the rank-two one.

use std::collections::{HashSet, VecDeque};

use algebra_core::Matrix;
use group_engine::embeddings::phi_paired;
use group_engine::group::pack_matrix;
use group_engine::{Family, GroupSpec};

use crate::family::{validate_witness, Construction, ConstructedWitness, Trace};
use crate::typea::required_linear_witness;
use crate::WitnessError;

/// Constructs the witness for the rank-n symplectic group over GF(q).
pub fn construct_type_c(n: usize, q: u64) -> Result<Construction, WitnessError> {
    let spec = GroupSpec::new(Family::Sp, n, q)?;
    let w = if (n, q) == (2, 3) {
        rank_two_gf3_witness(&spec)?
    } else if (n, q) == (3, 3) {
        let rank2 = GroupSpec::new(Family::Sp, 2, 3)?;
        let inner = rank_two_gf3_witness(&rank2)?;
        // The 6-dimensional form restricted to these coordinates is
        // exactly the 4-dimensional one, and the complement is preserved.
        let coords = [0, 1, 4, 5];
        ConstructedWitness {
            spec: spec.clone(),
            element: inner.element.embed_at(6, &coords),
            conjugator: inner.conjugator.embed_at(6, &coords),
            trace: Trace {
                route: "corner embedding of the rank-two witness".to_string(),
                m: inner.trace.m,
                lambda_order: inner.trace.lambda_order,
                coordinates: coords.to_vec(),
            },
        }
    } else {
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
    };
    validate_witness(&w)?;
    Ok(Construction::Witness(w))
}

/// Finds the first symmetric element of order five met by a breadth-first
/// walk over products of the standard generators of the rank-two
/// symplectic group over GF(3).  For s symplectic and symmetric,
/// s·F·s = sᵀ·F·s = F, so the invariant form F conjugates s to s⁻¹.  Every
/// candidate is a product of generators, hence a group member by
/// construction, so the walk stops at the first hit instead of closing
/// the whole group.
fn rank_two_gf3_witness(spec: &GroupSpec) -> Result<ConstructedWitness, WitnessError> {
    let form = spec.form_matrix()?.ok_or_else(|| {
        WitnessError::Construction("symplectic group without an invariant form".to_string())
    })?;
    let generators = spec.generators()?;
    let field = spec.entry_field()?;
    let identity = Matrix::identity(&field, spec.dim());
    let mut seen = HashSet::from([pack_matrix(&identity)]);
    let mut frontier = VecDeque::from([identity]);
    while let Some(m) = frontier.pop_front() {
        for g in &generators {
            let next = m.mul(g);
            if !seen.insert(pack_matrix(&next)) {
                continue;
            }
            if next.is_symmetric() && matches!(next.multiplicative_order(5), Ok(5)) {
                return Ok(ConstructedWitness {
                    spec: spec.clone(),
                    element: next,
                    conjugator: form,
                    trace: Trace {
                        route: "first symmetric order-five generator product".to_string(),
                        m: Some(5),
                        lambda_order: Some(5),
                        coordinates: Vec::new(),
                    },
                });
            }
            frontier.push_back(next);
        }
    }
    Err(WitnessError::Construction(
        "no symmetric element of order five in the symplectic group".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Instant;

    fn witness(n: usize, q: u64) -> ConstructedWitness {
        match construct_type_c(n, q).unwrap() {
            Construction::Witness(w) => w,
            Construction::NoWitness { reason } => panic!("({n}, {q}): {reason}"),
        }
    }

    #[test]
    fn rank_two_gf3_witness_is_inverted_by_the_invariant_form_quickly() {
        let start = Instant::now();
        let w = witness(2, 3);
        assert!(start.elapsed().as_secs() < 1, "took {:?}", start.elapsed());
        assert_eq!(w.element.multiplicative_order(6).unwrap(), 5);
        assert_eq!(w.conjugator, w.spec.form_matrix().unwrap().unwrap());
        assert!(w.element.is_symmetric());
        assert!(w.spec.contains(&w.element).unwrap());
    }

    #[test]
    fn rank_three_gf3_witness_embeds_the_rank_two_one() {
        let w = witness(3, 3);
        assert_eq!(w.spec.to_string(), "Sp6(3)");
        assert_eq!(w.element.multiplicative_order(6).unwrap(), 5);
        assert_eq!(w.trace.coordinates, vec![0, 1, 4, 5]);
        assert!(w.spec.contains(&w.element).unwrap());
        assert!(w.spec.contains(&w.conjugator).unwrap());
    }

    #[test]
    fn doubling_route_lands_in_the_symplectic_group() {
        for (n, q) in [(2, 5), (3, 7), (4, 3), (2, 9)] {
            let w = witness(n, q);
            assert_eq!(w.element.nrows(), 2 * n);
            assert!(w.spec.contains(&w.element).unwrap(), "({n},{q})");
            assert!(w.spec.contains(&w.conjugator).unwrap(), "({n},{q})");
            let order = w.element.multiplicative_order(12).unwrap();
            assert!(order % 2 == 1 && order > 1, "({n},{q}) order {order}");
        }
    }
}
