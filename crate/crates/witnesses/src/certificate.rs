//! Self-verifying witness certificates.
//!
//! A certificate packages a group, an element, the outcome of the three
//! conditions, and a construction trace into a JSON-serializable value
//! whose every claim re-checks offline from the stored data by plain
//! matrix arithmetic: [`verify_certificate`] recomputes orders,
//! characteristic polynomials, conjugation identities, center coverage,
//! derived-subgroup membership, and the concluding status from scratch,
//! and rejects the certificate on any mismatch.

use algebra_core::{FieldDescriptor, Matrix};
use group_engine::conjugacy::is_conjugate;
use group_engine::derived::in_derived_subgroup;
use group_engine::{Conjugacy, Family, GroupSpec};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::conditions::{
    check_condition_a, check_condition_b, check_condition_c, CentralVerdict, ConditionA,
    ConditionB, ConditionC, ConditionReport, RealityEvidence,
};
use crate::family::{ConstructedWitness, Trace};
use crate::WitnessError;

/// Everything passed: group, derived subgroup, and central quotient.
pub const STATUS_CERTIFIED: &str = "CERTIFIED";
/// Condition A passed but B or C did not: the conclusion is weaker.
pub const STATUS_LIMITED: &str = "CERTIFIED_LIMITED";
/// Condition A failed: the element certifies nothing.
pub const STATUS_FAILED: &str = "FAILED";

const ORDER_LIMIT: u64 = 100_000;
const CONJUGACY_CAP: u64 = 200_000;

/// A matrix as row-major entries, each entry the coefficient list of a
/// field element on the power basis (constant term first).
pub type MatrixData = Vec<Vec<Vec<u64>>>;

/// Encodes a matrix entry-by-entry into coefficient lists.
pub fn encode_matrix(m: &Matrix) -> MatrixData {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m.at(r, c).coeffs().to_vec()).collect())
        .collect()
}

/// Decodes a coefficient-list matrix over the given field, insisting on
/// a nonempty square shape.
pub fn decode_matrix(
    field: &Arc<FieldDescriptor>,
    data: &MatrixData,
) -> Result<Matrix, WitnessError> {
    let n = data.len();
    if n == 0 || data.iter().any(|row| row.len() != n) {
        return Err(WitnessError::Verification(
            "matrix data is empty or not square".to_string(),
        ));
    }
    let mut rows = Vec::with_capacity(n);
    for row in data {
        let mut out = Vec::with_capacity(n);
        for entry in row {
            out.push(field.element_from_coeffs(entry)?);
        }
        rows.push(out);
    }
    Ok(Matrix::from_rows(field, &rows))
}

/// The group a certificate speaks about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: String,
    pub n: usize,
    pub q: u64,
    pub eps: Option<i64>,
}

/// How the element was produced, plus the structured conjugator that
/// inverts it (empty when none was recorded).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTrace {
    pub route: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_order: Option<u64>,
    pub coordinates: Vec<usize>,
    pub conjugator: MatrixData,
}

/// A complete, offline-checkable certificate for one element of one
/// group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub group: GroupDescriptor,
    pub element: MatrixData,
    pub conditions: ConditionReport,
    pub trace: CertificateTrace,
    pub conclusion: String,
    pub references: Vec<String>,
    pub status: String,
}

/// Certifies an externally supplied element: no structured conjugator,
/// no construction trace.
pub fn certify(spec: &GroupSpec, s: &Matrix) -> Result<WitnessCertificate, WitnessError> {
    certify_with(spec, s, None, Trace::external())
}

/// Certifies a constructed witness, reusing its structured conjugator
/// and construction trace.
pub fn certify_witness(w: &ConstructedWitness) -> Result<WitnessCertificate, WitnessError> {
    certify_with(&w.spec, &w.element, Some(&w.conjugator), w.trace.clone())
}

fn certify_with(
    spec: &GroupSpec,
    s: &Matrix,
    hint: Option<&Matrix>,
    trace: Trace,
) -> Result<WitnessCertificate, WitnessError> {
    let a = check_condition_a(spec, s, hint)?;
    let b = check_condition_b(spec, s)?;
    let c = check_condition_c(spec, s)?;
    let (status, conclusion) = conclusion_for(&a, &b, &c);
    let references = references_for(&a, &b, &c);
    let conjugator = match hint {
        Some(h) => encode_matrix(h),
        None => match &a.reality {
            RealityEvidence::ConjugacyWitness { conjugator } => conjugator.clone(),
            _ => Vec::new(),
        },
    };
    Ok(WitnessCertificate {
        group: GroupDescriptor {
            family: spec.family().label().to_string(),
            n: spec.rank(),
            q: spec.q(),
            eps: spec.family().epsilon(),
        },
        element: encode_matrix(s),
        conditions: ConditionReport { a, b, c },
        trace: CertificateTrace {
            route: trace.route,
            m: trace.m,
            lambda_order: trace.lambda_order,
            coordinates: trace.coordinates,
            conjugator,
        },
        conclusion: conclusion.to_string(),
        references,
        status: status.to_string(),
    })
}

/// The status and conclusion implied by which conditions passed.  The
/// three tiers: A alone speaks about the group itself; A with B descends
/// to the derived subgroup; A with B and C descends further to the
/// derived subgroup modulo its central intersection.
fn conclusion_for(a: &ConditionA, b: &ConditionB, c: &ConditionC) -> (&'static str, String) {
    if !a.passes {
        return (
            STATUS_FAILED,
            format!(
                "condition A fails (order {}, odd: {}): no real 2-block is certified by \
                 this element",
                a.order, a.odd
            ),
        );
    }
    match (b.passes, c.passes) {
        (true, true) => (
            STATUS_CERTIFIED,
            "conditions A, B, and C all hold: the group, its derived subgroup, and the \
             derived subgroup modulo its central intersection each acquire a \
             non-principal real 2-block"
                .to_string(),
        ),
        (true, false) => (
            STATUS_LIMITED,
            "conditions A and B hold but C fails: the group and its derived subgroup \
             acquire non-principal real 2-blocks; no descent to the central quotient is \
             certified"
                .to_string(),
        ),
        (false, true) => (
            STATUS_LIMITED,
            "conditions A and C hold but B fails: the group acquires a non-principal \
             real 2-block; no descent to the derived subgroup is certified"
                .to_string(),
        ),
        (false, false) => (
            STATUS_LIMITED,
            "only condition A holds: the group acquires a non-principal real 2-block; \
             no descent to subgroups or quotients is certified"
                .to_string(),
        ),
    }
}

/// Short self-contained justifications for the steps the certificate
/// relies on, matched to the conditions that actually passed.
fn references_for(a: &ConditionA, b: &ConditionB, c: &ConditionC) -> Vec<String> {
    let mut refs = vec![
        "a real-valued irreducible character forces its 2-block to be closed under \
         complex conjugation"
            .to_string(),
    ];
    if a.passes {
        refs.push(
            "a nontrivial real semisimple element of odd order with connected \
             centralizer indexes a real-valued irreducible character lying in a \
             non-principal 2-block"
                .to_string(),
        );
    }
    if a.passes && b.passes {
        refs.push(
            "when no nontrivial central translate of the element is conjugate to it, \
             that character remains irreducible and its block non-principal on the \
             derived subgroup"
                .to_string(),
        );
    }
    if a.passes && c.passes {
        refs.push(
            "when the element lies in the derived subgroup, the character factors \
             through the quotient by the central intersection"
                .to_string(),
        );
    }
    refs
}

/// Serializes a certificate as pretty-printed JSON.
pub fn certificate_to_json(cert: &WitnessCertificate) -> Result<String, WitnessError> {
    Ok(serde_json::to_string_pretty(cert)?)
}

/// Parses a certificate from JSON (without verifying it; see
/// [`verify_certificate`]).
pub fn certificate_from_json(json: &str) -> Result<WitnessCertificate, WitnessError> {
    Ok(serde_json::from_str(json)?)
}

fn fail(msg: impl Into<String>) -> WitnessError {
    WitnessError::Verification(msg.into())
}

/// Re-checks every claim in the certificate from the stored data alone:
/// group membership, orders, the conjugation identities behind each
/// reality and centrality verdict, coverage of the full center,
/// derived-subgroup membership, and the concluding status line.
pub fn verify_certificate(cert: &WitnessCertificate) -> Result<(), WitnessError> {
    let family = Family::parse(&cert.group.family)
        .ok_or_else(|| fail(format!("unknown family label {:?}", cert.group.family)))?;
    let spec = GroupSpec::new(family, cert.group.n, cert.group.q)?;
    if cert.group.eps != family.epsilon() {
        return Err(fail("the recorded sign does not match the family"));
    }
    let field = spec.entry_field()?;
    let s = decode_matrix(&field, &cert.element)?;
    if s.nrows() != spec.dim() {
        return Err(fail(format!(
            "the element has size {}, the group acts in dimension {}",
            s.nrows(),
            spec.dim()
        )));
    }
    if !spec.contains(&s)? {
        return Err(fail("the element is not a member of the group"));
    }

    verify_condition_a(&spec, &s, &cert.conditions.a)?;
    verify_condition_b(&spec, &s, &cert.conditions.b)?;
    verify_condition_c(&spec, &s, &cert.conditions.c)?;

    let (status, conclusion) =
        conclusion_for(&cert.conditions.a, &cert.conditions.b, &cert.conditions.c);
    if cert.status != status {
        return Err(fail(format!(
            "recorded status {:?} but the conditions imply {:?}",
            cert.status, status
        )));
    }
    if cert.conclusion != conclusion {
        return Err(fail("the conclusion does not match the conditions"));
    }

    if !cert.trace.conjugator.is_empty() {
        let t = decode_matrix(&field, &cert.trace.conjugator)?;
        if !spec.contains(&t)? {
            return Err(fail("the trace conjugator is not a member of the group"));
        }
        if t.mul(&s).mul(&t.inverse()?) != s.inverse()? {
            return Err(fail("the trace conjugator does not invert the element"));
        }
    }
    Ok(())
}

fn verify_condition_a(
    spec: &GroupSpec,
    s: &Matrix,
    a: &ConditionA,
) -> Result<(), WitnessError> {
    let order = s.multiplicative_order(ORDER_LIMIT)?;
    if order != a.order {
        return Err(fail(format!(
            "recorded order {} but the element has order {order}",
            a.order
        )));
    }
    if a.odd != (order % 2 == 1) {
        return Err(fail("the recorded parity does not match the order"));
    }
    let real = match &a.reality {
        RealityEvidence::ConjugacyWitness { conjugator } => {
            let field = spec.entry_field()?;
            let t = decode_matrix(&field, conjugator)?;
            if !spec.contains(&t)? {
                return Err(fail(
                    "the reality conjugator is not a member of the group",
                ));
            }
            if t.mul(s).mul(&t.inverse()?) != s.inverse()? {
                return Err(fail("the reality conjugator does not invert the element"));
            }
            true
        }
        RealityEvidence::NotReal { .. } | RealityEvidence::Inconclusive { .. } => {
            if a.passes {
                return Err(fail(
                    "condition A is recorded as passing without a conjugacy witness",
                ));
            }
            false
        }
    };
    if a.passes != (a.odd && order > 1 && real) {
        return Err(fail("the recorded verdict for condition A is inconsistent"));
    }
    Ok(())
}

fn verify_condition_b(
    spec: &GroupSpec,
    s: &Matrix,
    b: &ConditionB,
) -> Result<(), WitnessError> {
    let field = spec.entry_field()?;
    let center = spec.center_elements()?;
    if b.center_order != center.len() as u64 {
        return Err(fail(format!(
            "recorded center order {} but the center has {} elements",
            b.center_order,
            center.len()
        )));
    }
    let mut expected: Vec<MatrixData> = center
        .iter()
        .filter(|z| !z.is_identity())
        .map(encode_matrix)
        .collect();
    let mut recorded: Vec<MatrixData> = b.comparisons.iter().map(|c| c.z.clone()).collect();
    expected.sort();
    recorded.sort();
    if expected != recorded {
        return Err(fail(
            "the comparisons do not cover the nontrivial center exactly",
        ));
    }
    let s_order = s.multiplicative_order(ORDER_LIMIT)?;
    let p = spec.characteristic();
    for comparison in &b.comparisons {
        let z = decode_matrix(&field, &comparison.z)?;
        let z_order = z.multiplicative_order(ORDER_LIMIT)?;
        if z_order != comparison.z_order {
            return Err(fail(format!(
                "recorded central order {} but the element has order {z_order}",
                comparison.z_order
            )));
        }
        let sz = s.mul(&z);
        let sz_order = sz.multiplicative_order(ORDER_LIMIT)?;
        match &comparison.verdict {
            CentralVerdict::NonConjugateByOrder {
                s_order: rec_s,
                translate_order: rec_t,
            } => {
                if *rec_s != s_order || *rec_t != sz_order {
                    return Err(fail("the recorded orders do not match recomputation"));
                }
                if rec_s == rec_t {
                    return Err(fail("equal orders cannot separate conjugacy classes"));
                }
            }
            CentralVerdict::NonConjugateByCharpoly => {
                if s.charpoly() == sz.charpoly() {
                    return Err(fail(
                        "the characteristic polynomials agree, contradicting the verdict",
                    ));
                }
            }
            CentralVerdict::NonConjugateByEnumeration => {
                match is_conjugate(spec, s, &sz, &[], None, CONJUGACY_CAP)? {
                    Conjugacy::NotConjugate(_) => {}
                    _ => {
                        return Err(fail(
                            "enumeration does not confirm the non-conjugacy verdict",
                        ))
                    }
                }
            }
            CentralVerdict::ConjugateByMultiset => {
                let linear = matches!(spec.family(), Family::GL | Family::GU);
                if !linear
                    || s.charpoly() != sz.charpoly()
                    || s_order % p == 0
                    || sz_order % p == 0
                {
                    return Err(fail(
                        "the multiset criterion does not apply to this comparison",
                    ));
                }
            }
            CentralVerdict::ConjugateBy { conjugator } => {
                let t = decode_matrix(&field, conjugator)?;
                if !spec.contains(&t)? {
                    return Err(fail(
                        "the central-translate conjugator is not a member of the group",
                    ));
                }
                if t.mul(s).mul(&t.inverse()?) != sz {
                    return Err(fail(
                        "the central-translate conjugator does not do what it claims",
                    ));
                }
            }
            CentralVerdict::Inconclusive { .. } => {
                if b.passes {
                    return Err(fail(
                        "condition B is recorded as passing despite an inconclusive verdict",
                    ));
                }
            }
        }
    }
    let all_separated = b.comparisons.iter().all(|c| c.verdict.non_conjugate());
    if b.passes != all_separated {
        return Err(fail("the recorded verdict for condition B is inconsistent"));
    }
    Ok(())
}

fn verify_condition_c(
    spec: &GroupSpec,
    s: &Matrix,
    c: &ConditionC,
) -> Result<(), WitnessError> {
    let verdict = in_derived_subgroup(spec, s)?;
    if verdict.as_bool() != c.member {
        return Err(fail(
            "the derived-subgroup verdict does not match recomputation",
        ));
    }
    if c.passes != (c.member == Some(true)) {
        return Err(fail("the recorded verdict for condition C is inconsistent"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{family_by_code, Construction};

    fn witness(code: &str, n: usize, q: u64, eps: Option<i64>) -> ConstructedWitness {
        let family = family_by_code(code).unwrap();
        match family.construct(n, q, eps).unwrap() {
            Construction::Witness(w) => w,
            Construction::NoWitness { reason } => panic!("{code}:{n}:{q}: {reason}"),
        }
    }

    #[test]
    fn symplectic_witness_is_certified_and_round_trips() {
        let w = witness("C", 2, 3, None);
        let cert = certify_witness(&w).unwrap();
        assert_eq!(cert.status, STATUS_CERTIFIED);
        assert_eq!(cert.group.family, "Sp");
        assert_eq!(cert.group.eps, None);
        assert!(cert.conditions.all_pass());
        assert!(cert.references.len() >= 2);
        verify_certificate(&cert).unwrap();

        let json = certificate_to_json(&cert).unwrap();
        let back = certificate_from_json(&json).unwrap();
        assert_eq!(back, cert);
        verify_certificate(&back).unwrap();
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let w = witness("C", 2, 3, None);
        let cert = certify_witness(&w).unwrap();

        let mut wrong_status = cert.clone();
        wrong_status.status = STATUS_LIMITED.to_string();
        assert!(verify_certificate(&wrong_status).is_err());

        let mut wrong_order = cert.clone();
        wrong_order.conditions.a.order = 7;
        assert!(verify_certificate(&wrong_order).is_err());

        let mut wrong_element = cert.clone();
        wrong_element.element = encode_matrix(&Matrix::identity(w.element.field(), 4));
        assert!(verify_certificate(&wrong_element).is_err());

        let mut dropped_comparison = cert.clone();
        dropped_comparison.conditions.b.comparisons.clear();
        assert!(verify_certificate(&dropped_comparison).is_err());

        let json = certificate_to_json(&cert).unwrap();
        let tampered = json.replace("\"order\": 5", "\"order\": 15");
        let parsed = certificate_from_json(&tampered).unwrap();
        assert!(verify_certificate(&parsed).is_err());
    }

    #[test]
    fn unitary_multiset_failure_is_certified_with_limits() {
        let w = witness("A", 3, 5, Some(-1));
        let cert = certify_witness(&w).unwrap();
        assert_eq!(cert.status, STATUS_LIMITED);
        assert!(cert.conditions.a.passes);
        assert!(!cert.conditions.b.passes);
        assert!(cert.conditions.c.passes);
        assert!(cert.conclusion.contains("B fails"));
        verify_certificate(&cert).unwrap();
    }

    #[test]
    fn externally_supplied_identity_fails_on_nontriviality() {
        let spec = GroupSpec::new(Family::Sp, 2, 3).unwrap();
        let field = spec.entry_field().unwrap();
        let id = Matrix::identity(&field, 4);
        let cert = certify(&spec, &id).unwrap();
        assert_eq!(cert.status, STATUS_FAILED);
        assert_eq!(cert.conditions.a.order, 1);
        assert_eq!(cert.trace.route, "externally supplied element");
        verify_certificate(&cert).unwrap();
    }

    #[test]
    fn externally_supplied_even_order_element_fails() {
        let spec = GroupSpec::new(Family::Sp, 2, 3).unwrap();
        let field = spec.entry_field().unwrap();
        let minus = Matrix::identity(&field, 4).neg();
        let cert = certify(&spec, &minus).unwrap();
        assert_eq!(cert.status, STATUS_FAILED);
        assert!(!cert.conditions.a.passes);
        assert!(cert.conclusion.contains("condition A fails"));
        verify_certificate(&cert).unwrap();
    }

    #[test]
    fn odd_orthogonal_witness_with_trivial_center_is_certified() {
        let w = witness("B", 2, 3, None);
        let cert = certify_witness(&w).unwrap();
        assert_eq!(cert.status, STATUS_CERTIFIED);
        assert_eq!(cert.conditions.b.center_order, 1);
        assert!(cert.conditions.b.comparisons.is_empty());
        verify_certificate(&cert).unwrap();
    }
}
