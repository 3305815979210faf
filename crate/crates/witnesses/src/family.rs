//! The strategy registry: one construction strategy per classical family,
//! registered under a single-letter code and selected at runtime.

use algebra_core::Matrix;
use group_engine::{Family, GroupSpec};
use serde::{Deserialize, Serialize};

use crate::{typea, typeb, typec, typed, WitnessError};

/// How a witness was built: the route taken, the odd torus order `m` that
/// was selected, the order of the chosen root of unity, and the coordinate
/// subset of any block embedding.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub route: String,
    pub m: Option<u64>,
    pub lambda_order: Option<u64>,
    pub coordinates: Vec<usize>,
}

impl Trace {
    /// Trace used when certifying an element that was not built here.
    pub fn external() -> Trace {
        Trace {
            route: "externally supplied element".to_string(),
            m: None,
            lambda_order: None,
            coordinates: Vec::new(),
        }
    }
}

/// A fully built witness: the ambient group, the element itself, a verified
/// group element conjugating it to its inverse, and the construction trace.
#[derive(Clone, Debug)]
pub struct ConstructedWitness {
    pub spec: GroupSpec,
    pub element: Matrix,
    pub conjugator: Matrix,
    pub trace: Trace,
}

/// Outcome of a construction attempt: either a witness or the verdict that
/// none exists for these parameters.
#[derive(Clone, Debug)]
pub enum Construction {
    Witness(ConstructedWitness),
    NoWitness { reason: String },
}

impl Construction {
    pub fn witness(&self) -> Option<&ConstructedWitness> {
        match self {
            Construction::Witness(w) => Some(w),
            Construction::NoWitness { .. } => None,
        }
    }

    pub fn is_witness(&self) -> bool {
        matches!(self, Construction::Witness(_))
    }
}

/// A construction strategy for one classical family.
///
/// `eps` selects the form variant where the family has one: `Some(1)` or
/// `Some(-1)` for the linear/unitary and even orthogonal families, `None`
/// for the symplectic and odd orthogonal families.
pub trait WitnessFamily: Send + Sync {
    /// Single-letter code under which the strategy is registered.
    fn code(&self) -> &'static str;

    /// One-line description of the strategy.
    fn describe(&self) -> &'static str;

    /// The ambient group for the given parameters.
    fn group_spec(&self, n: usize, q: u64, eps: Option<i64>) -> Result<GroupSpec, WitnessError>;

    /// Attempts the construction.
    fn construct(&self, n: usize, q: u64, eps: Option<i64>)
        -> Result<Construction, WitnessError>;
}

struct LinearUnitary;
struct OddOrthogonal;
struct Symplectic;
struct EvenOrthogonal;

fn require_sign(code: &str, eps: Option<i64>) -> Result<i64, WitnessError> {
    match eps {
        Some(e @ (1 | -1)) => Ok(e),
        _ => Err(WitnessError::InvalidParameters(format!(
            "family {code} requires eps in {{+1, -1}}, got {eps:?}"
        ))),
    }
}

fn require_no_sign(code: &str, eps: Option<i64>) -> Result<(), WitnessError> {
    match eps {
        None => Ok(()),
        Some(e) => Err(WitnessError::InvalidParameters(format!(
            "family {code} does not take a sign parameter, got {e}"
        ))),
    }
}

impl WitnessFamily for LinearUnitary {
    fn code(&self) -> &'static str {
        "A"
    }

    fn describe(&self) -> &'static str {
        "general linear and unitary groups: torus element with eigenvalues {lambda, lambda^-1, 1, ...} \
         for lambda of odd order, or an order-five block over GF(3)"
    }

    fn group_spec(&self, n: usize, q: u64, eps: Option<i64>) -> Result<GroupSpec, WitnessError> {
        let family = if require_sign("A", eps)? == 1 { Family::GL } else { Family::GU };
        Ok(GroupSpec::new(family, n, q)?)
    }

    fn construct(
        &self,
        n: usize,
        q: u64,
        eps: Option<i64>,
    ) -> Result<Construction, WitnessError> {
        typea::construct_type_a(n, q, require_sign("A", eps)?)
    }
}

impl WitnessFamily for OddOrthogonal {
    fn code(&self) -> &'static str {
        "B"
    }

    fn describe(&self) -> &'static str {
        "odd orthogonal groups: doubling embedding of a linear witness, with a trace-form \
         transport over GF(3)"
    }

    fn group_spec(&self, n: usize, q: u64, eps: Option<i64>) -> Result<GroupSpec, WitnessError> {
        require_no_sign("B", eps)?;
        Ok(GroupSpec::new(Family::SOodd, n, q)?)
    }

    fn construct(
        &self,
        n: usize,
        q: u64,
        eps: Option<i64>,
    ) -> Result<Construction, WitnessError> {
        require_no_sign("B", eps)?;
        typeb::construct_type_b(n, q)
    }
}

impl WitnessFamily for Symplectic {
    fn code(&self) -> &'static str {
        "C"
    }

    fn describe(&self) -> &'static str {
        "symplectic groups: doubling embedding of a linear witness, with a symmetric \
         order-five element over GF(3)"
    }

    fn group_spec(&self, n: usize, q: u64, eps: Option<i64>) -> Result<GroupSpec, WitnessError> {
        require_no_sign("C", eps)?;
        Ok(GroupSpec::new(Family::Sp, n, q)?)
    }

    fn construct(
        &self,
        n: usize,
        q: u64,
        eps: Option<i64>,
    ) -> Result<Construction, WitnessError> {
        require_no_sign("C", eps)?;
        typec::construct_type_c(n, q)
    }
}

impl WitnessFamily for EvenOrthogonal {
    fn code(&self) -> &'static str {
        "D"
    }

    fn describe(&self) -> &'static str {
        "even orthogonal groups of either sign: doubling embeddings of linear witnesses, \
         with a trace-form transport for the minus type over GF(3)"
    }

    fn group_spec(&self, n: usize, q: u64, eps: Option<i64>) -> Result<GroupSpec, WitnessError> {
        let family = if require_sign("D", eps)? == 1 {
            Family::SOplus
        } else {
            Family::SOminus
        };
        Ok(GroupSpec::new(family, n, q)?)
    }

    fn construct(
        &self,
        n: usize,
        q: u64,
        eps: Option<i64>,
    ) -> Result<Construction, WitnessError> {
        typed::construct_type_d(n, q, require_sign("D", eps)?)
    }
}

static REGISTRY: [&dyn WitnessFamily; 4] =
    [&LinearUnitary, &OddOrthogonal, &Symplectic, &EvenOrthogonal];

/// All registered strategies, in code order `A`, `B`, `C`, `D`.
pub fn registry() -> &'static [&'static dyn WitnessFamily] {
    &REGISTRY
}

/// Looks up a strategy by its single-letter code (case-insensitive).
pub fn family_by_code(code: &str) -> Option<&'static dyn WitnessFamily> {
    REGISTRY.iter().copied().find(|f| f.code().eq_ignore_ascii_case(code))
}

/// Maps a concrete group family to the strategy serving it, together with
/// the sign parameter the strategy expects for that family.
pub fn witness_family_for(family: Family) -> Option<(&'static dyn WitnessFamily, Option<i64>)> {
    let (code, eps) = match family {
        Family::GL => ("A", Some(1)),
        Family::GU => ("A", Some(-1)),
        Family::SOodd => ("B", None),
        Family::Sp => ("C", None),
        Family::SOplus => ("D", Some(1)),
        Family::SOminus => ("D", Some(-1)),
        Family::SL | Family::SU => return None,
    };
    Some((family_by_code(code).expect("registry covers all codes"), eps))
}

/// Re-derives every claim a construction makes: membership of the element
/// and its conjugator, odd order above one, and the inversion identity.
pub(crate) fn validate_witness(w: &ConstructedWitness) -> Result<(), WitnessError> {
    if !w.spec.contains(&w.element)? {
        return Err(WitnessError::Construction(format!(
            "constructed element is not a member of {}",
            w.spec
        )));
    }
    if !w.spec.contains(&w.conjugator)? {
        return Err(WitnessError::Construction(format!(
            "constructed conjugator is not a member of {}",
            w.spec
        )));
    }
    let limit = (w.spec.q() + 2).max(8);
    let order = w.element.multiplicative_order(limit)?;
    if order < 2 || order % 2 == 0 {
        return Err(WitnessError::Construction(format!(
            "constructed element has order {order}, not an odd order above one"
        )));
    }
    let inverted = w
        .conjugator
        .mul(&w.element)
        .mul(&w.conjugator.inverse()?);
    if inverted != w.element.inverse()? {
        return Err(WitnessError::Construction(
            "conjugator does not carry the element to its inverse".to_string(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_exposes_four_codes_in_order() {
        let codes: Vec<&str> = registry().iter().map(|f| f.code()).collect();
        assert_eq!(codes, ["A", "B", "C", "D"]);
    }

    #[test]
    fn lookup_is_case_insensitive() {
        assert_eq!(family_by_code("a").unwrap().code(), "A");
        assert_eq!(family_by_code("D").unwrap().code(), "D");
        assert!(family_by_code("E").is_none());
    }

    #[test]
    fn group_specs_match_parameters() {
        let a = family_by_code("A").unwrap();
        assert_eq!(
            a.group_spec(3, 5, Some(1)).unwrap().to_string(),
            "GL3(5)"
        );
        assert_eq!(
            a.group_spec(3, 5, Some(-1)).unwrap().to_string(),
            "GU3(5)"
        );
        assert!(a.group_spec(3, 5, None).is_err());

        let b = family_by_code("B").unwrap();
        assert_eq!(b.group_spec(2, 3, None).unwrap().to_string(), "SO5(3)");
        assert!(b.group_spec(2, 3, Some(1)).is_err());

        let c = family_by_code("C").unwrap();
        assert_eq!(c.group_spec(2, 3, None).unwrap().to_string(), "Sp4(3)");

        let d = family_by_code("D").unwrap();
        assert_eq!(d.group_spec(4, 3, Some(1)).unwrap().to_string(), "SO8+(3)");
        assert_eq!(d.group_spec(4, 3, Some(-1)).unwrap().to_string(), "SO8-(3)");
        assert!(d.group_spec(3, 3, Some(1)).is_err());
    }

    #[test]
    fn group_family_mapping_covers_the_six_ambient_families() {
        for (fam, code, eps) in [
            (Family::GL, "A", Some(1)),
            (Family::GU, "A", Some(-1)),
            (Family::SOodd, "B", None),
            (Family::Sp, "C", None),
            (Family::SOplus, "D", Some(1)),
            (Family::SOminus, "D", Some(-1)),
        ] {
            let (strategy, sign) = witness_family_for(fam).unwrap();
            assert_eq!(strategy.code(), code);
            assert_eq!(sign, eps);
        }
        assert!(witness_family_for(Family::SL).is_none());
        assert!(witness_family_for(Family::SU).is_none());
    }
}
