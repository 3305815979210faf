//! The three checkable conditions on a candidate element.
//!
//! For a semisimple element `s` of a classical group `G` over a field of
//! odd characteristic:
//!
//! * **Condition A** — `s` is a nontrivial element of odd order that is
//!   conjugate to its inverse.  Together with the connectedness of its
//!   centralizer (recorded as a structural note per family), this forces
//!   a real-valued irreducible character whose 2-block is not the
//!   principal one.
//! * **Condition B** — no nontrivial central translate `s·z` is
//!   conjugate to `s`.  This separates the relevant characters on the
//!   center and lets the non-principal real 2-block descend to the
//!   derived subgroup.
//! * **Condition C** — `s` lies in the derived subgroup, which is what a
//!   further descent to the quotient of the derived subgroup by its
//!   central intersection requires.
//!
//! Every verdict carries enough data (orders, characteristic
//! polynomials, explicit conjugators) to be re-checked offline by plain
//! matrix arithmetic.

use algebra_core::Matrix;
use group_engine::conjugacy::is_conjugate;
use group_engine::derived::in_derived_subgroup;
use group_engine::{Conjugacy, Family, GroupSpec};
use serde::{Deserialize, Serialize};

use crate::certificate::{encode_matrix, MatrixData};
use crate::WitnessError;

/// Order-search bound for elements handed to the condition checkers.
const ORDER_LIMIT: u64 = 100_000;

/// Enumeration cap handed to the conjugacy decider.
const CONJUGACY_CAP: u64 = 200_000;

/// The combined outcome of the three checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub a: ConditionA,
    pub b: ConditionB,
    pub c: ConditionC,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.a.passes && self.b.passes && self.c.passes
    }
}

/// Oddness, nontriviality, and reality of the element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionA {
    /// Multiplicative order of the element.
    pub order: u64,
    /// Whether that order is odd.
    pub odd: bool,
    /// How reality (conjugacy to the inverse) was settled.
    pub reality: RealityEvidence,
    /// Why centralizers of odd-order semisimple elements are connected
    /// in this family.
    pub centralizer_note: String,
    pub passes: bool,
}

/// Evidence for or against conjugacy of the element to its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RealityEvidence {
    /// An explicit `t` with `t·s·t⁻¹ = s⁻¹`.
    ConjugacyWitness { conjugator: MatrixData },
    /// A verified obstruction to conjugacy.
    NotReal { obstruction: String },
    /// Neither settled; treated as failure.
    Inconclusive { reason: String },
}

/// Separation of the element from its nontrivial central translates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionB {
    /// Order of the center of the group (including the identity).
    pub center_order: u64,
    /// One verdict per nontrivial central element.
    pub comparisons: Vec<CentralComparison>,
    pub passes: bool,
}

/// The verdict for a single central translate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralComparison {
    /// The central element `z`.
    pub z: MatrixData,
    /// Its multiplicative order.
    pub z_order: u64,
    pub verdict: CentralVerdict,
}

/// How conjugacy of `s` and `s·z` was decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CentralVerdict {
    /// The orders differ, so the two cannot be conjugate.
    NonConjugateByOrder { s_order: u64, translate_order: u64 },
    /// The characteristic polynomials differ.
    NonConjugateByCharpoly,
    /// Exhaustive search over the (small) group found no conjugator.
    NonConjugateByEnumeration,
    /// In a general linear or unitary group, semisimple elements with
    /// equal characteristic polynomials are conjugate — so this
    /// translate defeats the condition.
    ConjugateByMultiset,
    /// An explicit `t` with `t·s·t⁻¹ = s·z` — likewise a defeat.
    ConjugateBy { conjugator: MatrixData },
    /// Neither settled; treated as failure.
    Inconclusive { reason: String },
}

impl CentralVerdict {
    /// True exactly when the verdict certifies non-conjugacy.
    pub fn non_conjugate(&self) -> bool {
        matches!(
            self,
            CentralVerdict::NonConjugateByOrder { .. }
                | CentralVerdict::NonConjugateByCharpoly
                | CentralVerdict::NonConjugateByEnumeration
        )
    }
}

/// Membership of the element in the derived subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionC {
    /// Three-valued membership (`None` when undecided).
    pub member: Option<bool>,
    /// The method that produced the verdict.
    pub method: String,
    pub passes: bool,
}

/// Checks condition A for `s` in the group described by `spec`.  An
/// optional structured conjugator is tried before any search.
pub fn check_condition_a(
    spec: &GroupSpec,
    s: &Matrix,
    hint: Option<&Matrix>,
) -> Result<ConditionA, WitnessError> {
    if !spec.contains(s)? {
        return Err(WitnessError::InvalidParameters(format!(
            "the element is not a member of {spec}"
        )));
    }
    let order = s.multiplicative_order(ORDER_LIMIT)?;
    let odd = order % 2 == 1;
    let inverse = s.inverse()?;
    let reality = if *s == inverse {
        RealityEvidence::ConjugacyWitness {
            conjugator: encode_matrix(&Matrix::identity(s.field(), s.nrows())),
        }
    } else {
        let hints: Vec<Matrix> = hint.into_iter().cloned().collect();
        match is_conjugate(spec, s, &inverse, &hints, None, CONJUGACY_CAP)? {
            Conjugacy::ConjugateBy(t) => RealityEvidence::ConjugacyWitness {
                conjugator: encode_matrix(&t),
            },
            Conjugacy::NotConjugate(ev) => RealityEvidence::NotReal {
                obstruction: ev.describe().to_string(),
            },
            Conjugacy::Inconclusive => RealityEvidence::Inconclusive {
                reason: "no structured conjugator applied and the group is too large to \
                         enumerate"
                    .to_string(),
            },
        }
    };
    let passes =
        odd && order > 1 && matches!(reality, RealityEvidence::ConjugacyWitness { .. });
    Ok(ConditionA {
        order,
        odd,
        reality,
        centralizer_note: centralizer_note(spec.family()).to_string(),
        passes,
    })
}

/// Why the centralizer of an odd-order semisimple element is connected,
/// stated per family.
fn centralizer_note(family: Family) -> &'static str {
    match family {
        Family::GL | Family::SL => {
            "the centralizer is a product of general linear groups over extension fields, \
             hence connected"
        }
        Family::GU | Family::SU => {
            "the centralizer is a product of general linear and unitary groups over \
             extension fields, hence connected"
        }
        Family::Sp => {
            "the ambient symplectic group is simply connected, so centralizers of \
             semisimple elements are connected"
        }
        Family::SOodd | Family::SOplus | Family::SOminus => {
            "odd order excludes the eigenvalue -1, so the centralizer is the special \
             orthogonal group of the fixed space times linear and unitary factors, and \
             the determinant condition fuses these into a connected group"
        }
    }
}

/// Checks condition B: `s` must not be conjugate to `s·z` for any
/// nontrivial central `z`.
pub fn check_condition_b(spec: &GroupSpec, s: &Matrix) -> Result<ConditionB, WitnessError> {
    if !spec.contains(s)? {
        return Err(WitnessError::InvalidParameters(format!(
            "the element is not a member of {spec}"
        )));
    }
    let center = spec.center_elements()?;
    let center_order = center.len() as u64;
    let s_order = s.multiplicative_order(ORDER_LIMIT)?;
    let p = spec.characteristic();
    // In the general linear and unitary families, conjugacy classes of
    // semisimple elements are determined by the characteristic
    // polynomial, so an equal charpoly settles conjugacy positively.
    let multiset_decides =
        matches!(spec.family(), Family::GL | Family::GU) && s_order % p != 0;
    let s_charpoly = s.charpoly();
    let mut comparisons = Vec::new();
    for z in &center {
        if z.is_identity() {
            continue;
        }
        let z_order = z.multiplicative_order(ORDER_LIMIT)?;
        let sz = s.mul(z);
        let translate_order = sz.multiplicative_order(ORDER_LIMIT)?;
        let verdict = if translate_order != s_order {
            CentralVerdict::NonConjugateByOrder {
                s_order,
                translate_order,
            }
        } else if sz.charpoly() != s_charpoly {
            CentralVerdict::NonConjugateByCharpoly
        } else if multiset_decides && translate_order % p != 0 {
            CentralVerdict::ConjugateByMultiset
        } else {
            match is_conjugate(spec, s, &sz, &[], None, CONJUGACY_CAP)? {
                Conjugacy::ConjugateBy(t) => CentralVerdict::ConjugateBy {
                    conjugator: encode_matrix(&t),
                },
                Conjugacy::NotConjugate(_) => CentralVerdict::NonConjugateByEnumeration,
                Conjugacy::Inconclusive => CentralVerdict::Inconclusive {
                    reason: "equal order and characteristic polynomial, and the group is \
                             too large to enumerate"
                        .to_string(),
                },
            }
        };
        comparisons.push(CentralComparison {
            z: encode_matrix(z),
            z_order,
            verdict,
        });
    }
    let passes = comparisons.iter().all(|c| c.verdict.non_conjugate());
    Ok(ConditionB {
        center_order,
        comparisons,
        passes,
    })
}

/// Checks condition C: membership of `s` in the derived subgroup.
pub fn check_condition_c(spec: &GroupSpec, s: &Matrix) -> Result<ConditionC, WitnessError> {
    let verdict = in_derived_subgroup(spec, s)?;
    Ok(ConditionC {
        member: verdict.as_bool(),
        method: verdict.reason().to_string(),
        passes: verdict.as_bool() == Some(true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{family_by_code, Construction};

    fn witness(code: &str, n: usize, q: u64, eps: Option<i64>) -> crate::ConstructedWitness {
        let family = family_by_code(code).unwrap();
        match family.construct(n, q, eps).unwrap() {
            Construction::Witness(w) => w,
            Construction::NoWitness { reason } => panic!("{code}:{n}:{q}: {reason}"),
        }
    }

    #[test]
    fn symplectic_witness_passes_all_three_conditions() {
        let w = witness("C", 2, 3, None);
        let a = check_condition_a(&w.spec, &w.element, Some(&w.conjugator)).unwrap();
        assert!(a.passes);
        assert_eq!(a.order, 5);
        assert!(matches!(a.reality, RealityEvidence::ConjugacyWitness { .. }));

        let b = check_condition_b(&w.spec, &w.element).unwrap();
        assert!(b.passes);
        assert_eq!(b.center_order, 2);
        assert_eq!(b.comparisons.len(), 1);
        assert!(matches!(
            b.comparisons[0].verdict,
            CentralVerdict::NonConjugateByOrder {
                s_order: 5,
                translate_order: 10
            }
        ));

        let c = check_condition_c(&w.spec, &w.element).unwrap();
        assert!(c.passes);
        assert_eq!(c.member, Some(true));
    }

    #[test]
    fn unitary_rank_three_over_gf5_fails_condition_b_by_multiset() {
        // The center of GU_3(5) has order 6 and contains a scalar of
        // order 3; multiplying the diagonal witness by it permutes the
        // eigenvalues, so the translate is conjugate to the element.
        let w = witness("A", 3, 5, Some(-1));
        let a = check_condition_a(&w.spec, &w.element, Some(&w.conjugator)).unwrap();
        assert!(a.passes);
        let b = check_condition_b(&w.spec, &w.element).unwrap();
        assert!(!b.passes);
        assert!(b
            .comparisons
            .iter()
            .any(|c| matches!(c.verdict, CentralVerdict::ConjugateByMultiset)));
        let c = check_condition_c(&w.spec, &w.element).unwrap();
        assert!(c.passes, "the witness has determinant one");
    }

    #[test]
    fn linear_rank_three_over_gf7_fails_condition_b_by_multiset() {
        let w = witness("A", 3, 7, Some(1));
        let b = check_condition_b(&w.spec, &w.element).unwrap();
        assert!(!b.passes);
        assert!(b
            .comparisons
            .iter()
            .any(|c| matches!(c.verdict, CentralVerdict::ConjugateByMultiset)));
    }

    #[test]
    fn linear_rank_two_over_gf5_passes_condition_b() {
        // The center of GL_2(5) is cyclic of order 4; every nontrivial
        // translate of the order-3 witness changes the order or the
        // characteristic polynomial.
        let w = witness("A", 2, 5, Some(1));
        let b = check_condition_b(&w.spec, &w.element).unwrap();
        assert!(b.passes);
        assert_eq!(b.center_order, 4);
        assert_eq!(b.comparisons.len(), 3);
    }

    #[test]
    fn trivial_center_passes_condition_b_vacuously() {
        let w = witness("B", 2, 3, None);
        let b = check_condition_b(&w.spec, &w.element).unwrap();
        assert!(b.passes);
        assert_eq!(b.center_order, 1);
        assert!(b.comparisons.is_empty());
    }

    #[test]
    fn identity_fails_condition_a_on_order() {
        let spec = GroupSpec::new(Family::Sp, 2, 3).unwrap();
        let field = spec.entry_field().unwrap();
        let id = Matrix::identity(&field, 4);
        let a = check_condition_a(&spec, &id, None).unwrap();
        assert_eq!(a.order, 1);
        assert!(a.odd);
        assert!(!a.passes, "nontriviality is part of the condition");
    }

    #[test]
    fn even_order_fails_condition_a() {
        let spec = GroupSpec::new(Family::Sp, 2, 3).unwrap();
        let field = spec.entry_field().unwrap();
        let minus = Matrix::identity(&field, 4).neg();
        let a = check_condition_a(&spec, &minus, None).unwrap();
        assert_eq!(a.order, 2);
        assert!(!a.odd);
        assert!(!a.passes);
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let spec = GroupSpec::new(Family::Sp, 2, 3).unwrap();
        let field = spec.entry_field().unwrap();
        let mut entries = vec![field.one(); 4];
        entries[0] = field.from_u64(2);
        let outsider = Matrix::diagonal(&field, &entries);
        assert!(!spec.contains(&outsider).unwrap());
        assert!(check_condition_a(&spec, &outsider, None).is_err());
        assert!(check_condition_b(&spec, &outsider).is_err());
        assert!(check_condition_c(&spec, &outsider).is_err());
    }
}
