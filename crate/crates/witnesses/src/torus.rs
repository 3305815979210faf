//! A four-dimensional model of an order-five torus over GF(3).
//!
//! Neither 3 − 1 nor 3 + 1 has an odd divisor above one, so odd-order
//! elements over GF(3) must come from a quartic extension: the smallest
//! odd order available is five, realized inside GF(81).  Viewing GF(81)
//! as a four-dimensional GF(3)-space gives three compatible matrices:
//!
//! * `mult` — multiplication by a fixed root of unity λ of order five;
//! * `inv`  — the field automorphism x ↦ x⁹, an involution that inverts
//!   `mult` (λ⁹ = λ⁴ = λ⁻¹);
//! * `gram` — the Gram matrix of the symmetric bilinear form
//!   (x, y) ↦ Tr(x·y⁹), which both maps above preserve.
//!
//! Orthogonal constructions extend this model by a small diagonal block
//! and transport it onto the standard antidiagonal form.

use std::sync::Arc;

use algebra_core::{FieldDescriptor, FieldElement, Matrix};

use crate::WitnessError;

pub(crate) struct TraceFormModel {
    pub field: Arc<FieldDescriptor>,
    pub mult: Matrix,
    pub inv: Matrix,
    pub gram: Matrix,
}

/// Builds the model and re-derives every property the constructions rely
/// on, so that downstream uses never rest on an unchecked identity.
pub(crate) fn trace_form_model() -> Result<TraceFormModel, WitnessError> {
    let base = FieldDescriptor::get(3, 1)?;
    let big = FieldDescriptor::get(3, 4)?;
    let lambda = big.primitive_root_of_unity(5)?;
    let dim = big.degree() as usize;

    let mut basis = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut coeffs = vec![0u64; dim];
        coeffs[i] = 1;
        basis.push(big.element_from_coeffs(&coeffs)?);
    }

    let base_column = |x: &FieldElement| -> Vec<FieldElement> {
        x.coeffs().iter().map(|&c| base.from_u64(c)).collect()
    };
    let columns_to_matrix = |cols: Vec<Vec<FieldElement>>| -> Matrix {
        Matrix::from_rows(&base, &cols).transpose()
    };

    let mult = columns_to_matrix(basis.iter().map(|b| base_column(&lambda.mul(b))).collect());
    let inv = columns_to_matrix(basis.iter().map(|b| base_column(&b.frobenius(2))).collect());

    let trace = |x: &FieldElement| -> FieldElement {
        let t = x
            .add(&x.frobenius(1))
            .add(&x.frobenius(2))
            .add(&x.frobenius(3));
        base.from_u64(t.coeffs()[0])
    };
    let mut gram = Matrix::zeros(&base, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            gram.set(i, j, trace(&basis[i].mul(&basis[j].frobenius(2))));
        }
    }

    if mult.multiplicative_order(6)? != 5 {
        return Err(model_error("the multiplication map does not have order five"));
    }
    if !inv.mul(&inv).is_identity() {
        return Err(model_error("the field automorphism map is not an involution"));
    }
    if inv.mul(&mult).mul(&inv) != mult.inverse()? {
        return Err(model_error("the involution does not invert the multiplication map"));
    }
    if !gram.is_symmetric() || gram.det().is_zero() {
        return Err(model_error("the trace form is not symmetric nondegenerate"));
    }
    if mult.transpose().mul(&gram).mul(&mult) != gram {
        return Err(model_error("the multiplication map is not an isometry of the trace form"));
    }
    if inv.transpose().mul(&gram).mul(&inv) != gram {
        return Err(model_error("the involution is not an isometry of the trace form"));
    }

    Ok(TraceFormModel { field: base, mult, inv, gram })
}

fn model_error(message: &str) -> WitnessError {
    WitnessError::Construction(format!("trace-form model over GF(3): {message}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_builds_and_has_the_advertised_properties() {
        let model = trace_form_model().unwrap();
        assert_eq!(model.mult.nrows(), 4);
        assert_eq!(model.mult.multiplicative_order(6).unwrap(), 5);
        assert!(model.inv.mul(&model.inv).is_identity());
        assert_eq!(
            model.inv.mul(&model.mult).mul(&model.inv),
            model.mult.inverse().unwrap()
        );
        assert!(model.gram.is_symmetric());
    }

    #[test]
    fn multiplication_map_has_no_fixed_vectors_but_involution_fixes_a_plane() {
        let model = trace_form_model().unwrap();
        let id = Matrix::identity(&model.field, 4);
        assert_eq!(model.mult.sub(&id).kernel().len(), 0);
        assert_eq!(model.inv.sub(&id).kernel().len(), 2);
    }
}
