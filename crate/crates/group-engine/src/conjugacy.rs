//! Three-valued conjugacy testing in classical groups.
//!
//! The strategy is layered.  Cheap invariants (element order, then the
//! characteristic polynomial, which for square matrices carries the same
//! information as the eigenvalue multiset) refute conjugacy outright.
//! If the invariants agree, a short list of structured candidate
//! conjugators is tried: caller-supplied hints first, then the invariant
//! form of the group, the coordinate reversal, the minus-type twist, and
//! — in small sizes — signed monomial variants of the reversal.  When the
//! whole group fits under the enumeration cap, a full transporter scan
//! settles the question either way; otherwise the verdict is
//! [`Conjugacy::Inconclusive`] rather than a guess.

use algebra_core::Matrix;
use num_bigint::BigUint;

use crate::group::MatrixGroup;
use crate::spec::GroupSpec;
use crate::GroupError;

/// Why two elements are certainly not conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonConjugacyEvidence {
    /// The element orders differ.
    ElementOrder,
    /// The characteristic polynomials differ.
    CharacteristicPolynomial,
    /// The eigenvalue multisets (over a splitting field) differ.
    EigenvalueMultiset,
    /// Every element of the (fully enumerated) group was tried as a
    /// conjugator and none works.
    TransporterExhausted,
}

impl NonConjugacyEvidence {
    pub fn describe(self) -> &'static str {
        match self {
            NonConjugacyEvidence::ElementOrder => "element orders differ",
            NonConjugacyEvidence::CharacteristicPolynomial => {
                "characteristic polynomials differ"
            }
            NonConjugacyEvidence::EigenvalueMultiset => "eigenvalue multisets differ",
            NonConjugacyEvidence::TransporterExhausted => {
                "exhaustive transporter scan found no conjugator"
            }
        }
    }
}

/// Outcome of a conjugacy test.
#[derive(Clone, Debug)]
pub enum Conjugacy {
    /// A verified conjugator `t` with `t·a·t⁻¹ = b`.
    ConjugateBy(Matrix),
    /// A verified obstruction.
    NotConjugate(NonConjugacyEvidence),
    /// Neither a conjugator nor an obstruction was found.
    Inconclusive,
}

impl Conjugacy {
    pub fn is_conjugate(&self) -> Option<bool> {
        match self {
            Conjugacy::ConjugateBy(_) => Some(true),
            Conjugacy::NotConjugate(_) => Some(false),
            Conjugacy::Inconclusive => None,
        }
    }
}

/// Decides whether `a` and `b` are conjugate in the group described by
/// `spec`.  `hints` are candidate conjugators to try first (they are
/// membership-checked, not trusted).  `group` may supply a pre-enumerated
/// copy of the group; otherwise the group is enumerated on the fly when
/// its order is at most `cap`.
pub fn is_conjugate(
    spec: &GroupSpec,
    a: &Matrix,
    b: &Matrix,
    hints: &[Matrix],
    group: Option<&MatrixGroup>,
    cap: u64,
) -> Result<Conjugacy, GroupError> {
    if !spec.contains(a)? {
        return Err(GroupError::NotInGroup(format!("first element of {spec}")));
    }
    if !spec.contains(b)? {
        return Err(GroupError::NotInGroup(format!("second element of {spec}")));
    }
    let order_bound = 100_000_000;
    if a.multiplicative_order(order_bound)? != b.multiplicative_order(order_bound)? {
        return Ok(Conjugacy::NotConjugate(NonConjugacyEvidence::ElementOrder));
    }
    if a.charpoly() != b.charpoly() {
        return Ok(Conjugacy::NotConjugate(
            NonConjugacyEvidence::CharacteristicPolynomial,
        ));
    }
    for t in candidate_conjugators(spec, hints)? {
        if spec.contains(&t)? {
            let ti = match t.inverse() {
                Ok(ti) => ti,
                Err(_) => continue,
            };
            if t.mul(a).mul(&ti) == *b {
                return Ok(Conjugacy::ConjugateBy(t));
            }
        }
    }
    let enumerated;
    let group = match group {
        Some(g) => Some(g),
        None => {
            if spec.order() <= BigUint::from(cap) && spec.family() != crate::Family::SOminus {
                enumerated = MatrixGroup::enumerate(spec, cap)?;
                Some(&enumerated)
            } else {
                None
            }
        }
    };
    if let Some(g) = group {
        return Ok(match g.transporter(a, b) {
            Some(t) => Conjugacy::ConjugateBy(t),
            None => Conjugacy::NotConjugate(NonConjugacyEvidence::TransporterExhausted),
        });
    }
    Ok(Conjugacy::Inconclusive)
}

/// The structured candidate list: hints, the invariant form, the plain
/// coordinate reversal, the minus-type twist, and (for sizes up to 8)
/// signed variants `diag(±1,…) · reversal` and signed diagonals.
fn candidate_conjugators(spec: &GroupSpec, hints: &[Matrix]) -> Result<Vec<Matrix>, GroupError> {
    let field = spec.entry_field()?;
    let d = spec.dim();
    let mut cands: Vec<Matrix> = hints.to_vec();
    if let Some(form) = spec.form_matrix()? {
        cands.push(form);
    }
    cands.push(Matrix::antidiag(&field, d));
    if let Some(x) = spec.twist_matrix()? {
        cands.push(x);
    }
    if d <= 8 {
        let reversal = Matrix::antidiag(&field, d);
        for mask in 1u32..(1 << d) {
            let signs: Vec<_> = (0..d)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        field.from_i64(-1)
                    } else {
                        field.one()
                    }
                })
                .collect();
            let diag = Matrix::diagonal(&field, &signs);
            cands.push(diag.mul(&reversal));
            cands.push(diag);
        }
    }
    Ok(cands)
}

/// Compares eigenvalue multisets of two square matrices over a common
/// splitting field.  This is the invariant that separates conjugacy
/// classes of semisimple elements in the general linear and unitary
/// groups, and it is also exactly the information carried by the
/// characteristic polynomial.
pub fn eigenvalue_multisets_equal(a: &Matrix, b: &Matrix) -> bool {
    a.charpoly() == b.charpoly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ENUMERATION_CAP;
    use crate::spec::Family;
    use algebra_core::FieldDescriptor;

    fn is_scalar(m: &Matrix) -> bool {
        let d = m.nrows();
        let lead = m.at(0, 0).clone();
        (0..d).all(|r| {
            (0..d).all(|c| {
                if r == c {
                    m.at(r, c) == &lead
                } else {
                    m.at(r, c).is_zero()
                }
            })
        })
    }

    #[test]
    fn gl2_3_all_pairs_cross_check() {
        // Three independent notions must coincide on all of GL_2(3):
        // the layered decision procedure, conjugacy-class membership from
        // the orbit computation, and the rational-invariant prediction
        // (equal characteristic polynomial plus matching scalarity, which
        // determines 2x2 rational canonical forms).
        let spec = GroupSpec::new(Family::GL, 2, 3).unwrap();
        let group = MatrixGroup::enumerate(&spec, DEFAULT_ENUMERATION_CAP).unwrap();
        let n = group.order() as u32;
        let mut verdict_counts = [0u32; 2];
        for i in 0..n {
            let a = group.element(i);
            for j in 0..n {
                let b = group.element(j);
                let truth = group.class_of_element(&a) == group.class_of_element(&b);
                let predicted =
                    a.charpoly() == b.charpoly() && is_scalar(&a) == is_scalar(&b);
                assert_eq!(predicted, truth, "rational invariants decide GL2(3)");
                let verdict =
                    is_conjugate(&spec, &a, &b, &[], Some(&group), DEFAULT_ENUMERATION_CAP)
                        .unwrap();
                match verdict {
                    Conjugacy::ConjugateBy(t) => {
                        assert!(truth);
                        let ti = t.inverse().unwrap();
                        assert_eq!(t.mul(&a).mul(&ti), b, "returned conjugator is verified");
                        assert!(spec.contains(&t).unwrap());
                        verdict_counts[0] += 1;
                    }
                    Conjugacy::NotConjugate(_) => {
                        assert!(!truth);
                        verdict_counts[1] += 1;
                    }
                    Conjugacy::Inconclusive => {
                        panic!("enumerable group must never be inconclusive")
                    }
                }
            }
        }
        assert!(verdict_counts[0] > 0 && verdict_counts[1] > 0);
    }

    #[test]
    fn invariant_evidence_is_accurate() {
        let spec = GroupSpec::new(Family::SL, 2, 3).unwrap();
        let field = spec.entry_field().unwrap();
        let id = Matrix::identity(&field, 2);
        let minus = id.neg();
        match is_conjugate(&spec, &id, &minus, &[], None, DEFAULT_ENUMERATION_CAP).unwrap() {
            Conjugacy::NotConjugate(NonConjugacyEvidence::ElementOrder) => {}
            other => panic!("expected an element-order refutation, got {other:?}"),
        }
        // Same order (4), different characteristic polynomials: diag(ω, 1)
        // versus diag(ω, ω) in GL_2(9) must be refuted by the charpoly.
        let spec9 = GroupSpec::new(Family::GL, 2, 9).unwrap();
        let f9 = spec9.entry_field().unwrap();
        let omega = f9.primitive_root_of_unity(4).unwrap();
        let a = Matrix::diagonal(&f9, &[omega.clone(), f9.one()]);
        let b = Matrix::diagonal(&f9, &[omega.clone(), omega.clone()]);
        assert_eq!(a.multiplicative_order(100).unwrap(), 4);
        assert_eq!(b.multiplicative_order(100).unwrap(), 4);
        match is_conjugate(&spec9, &a, &b, &[], None, DEFAULT_ENUMERATION_CAP).unwrap() {
            Conjugacy::NotConjugate(NonConjugacyEvidence::CharacteristicPolynomial) => {}
            other => panic!("expected charpoly evidence, got {other:?}"),
        }
    }

    #[test]
    fn structured_candidates_settle_large_groups() {
        // In GL_3(7) (order far beyond the cap) the coordinate reversal
        // inverts a diagonal element of order 3; the layered procedure
        // finds it without enumeration.
        let spec = GroupSpec::new(Family::GL, 3, 7).unwrap();
        let field = spec.entry_field().unwrap();
        let lam = field.primitive_root_of_unity(3).unwrap();
        let s = Matrix::diagonal(&field, &[lam.clone(), field.one(), lam.inverse().unwrap()]);
        let si = s.inverse().unwrap();
        match is_conjugate(&spec, &s, &si, &[], None, DEFAULT_ENUMERATION_CAP).unwrap() {
            Conjugacy::ConjugateBy(t) => {
                let ti = t.inverse().unwrap();
                assert_eq!(t.mul(&s).mul(&ti), si);
            }
            other => panic!("expected a structured conjugator, got {other:?}"),
        }
        // A caller-supplied hint also works and is verified, not trusted.
        let hint = Matrix::permutation(&field, &[2, 1, 0]);
        match is_conjugate(&spec, &s, &si, &[hint], None, DEFAULT_ENUMERATION_CAP).unwrap() {
            Conjugacy::ConjugateBy(_) => {}
            other => panic!("expected the hint to succeed, got {other:?}"),
        }
    }

    #[test]
    fn honest_inconclusive_beyond_the_cap() {
        // Conjugate a diagonal element by a scrambled word; the result is
        // conjugate to the original, but no structured candidate works and
        // the group is too large to enumerate, so the verdict must be
        // Inconclusive rather than a guess.
        let spec = GroupSpec::new(Family::GL, 3, 7).unwrap();
        let field = spec.entry_field().unwrap();
        let lam = field.primitive_root_of_unity(3).unwrap();
        let s = Matrix::diagonal(&field, &[lam.clone(), field.one(), lam.inverse().unwrap()]);
        let gens = spec.generators().unwrap();
        let w = crate::group::generator_walk(&gens, 0xFEED, 40);
        let b = w.mul(&s).mul(&w.inverse().unwrap());
        match is_conjugate(&spec, &s, &b, &[], None, DEFAULT_ENUMERATION_CAP).unwrap() {
            Conjugacy::Inconclusive => {}
            Conjugacy::ConjugateBy(t) => {
                // Acceptable only if some candidate happens to work; verify it.
                let ti = t.inverse().unwrap();
                assert_eq!(t.mul(&s).mul(&ti), b);
            }
            Conjugacy::NotConjugate(e) => {
                panic!("false refutation {e:?} of genuinely conjugate elements")
            }
        }
    }

    #[test]
    fn eigenvalue_multiset_helper() {
        let f7 = FieldDescriptor::get(7, 1).unwrap();
        let a = Matrix::from_i64(&f7, &[vec![2, 0], vec![0, 4]]);
        let b = Matrix::from_i64(&f7, &[vec![4, 0], vec![0, 2]]);
        let c = Matrix::from_i64(&f7, &[vec![2, 0], vec![0, 2]]);
        assert!(eigenvalue_multisets_equal(&a, &b));
        assert!(!eigenvalue_multisets_equal(&a, &c));
    }
}
