//! Membership in the derived subgroup of a classical group.
//!
//! The verdict is three-valued and always carries its justification:
//!
//! * linear and unitary families — the derived subgroup is the
//!   determinant-one subgroup, so the determinant decides (this holds
//!   for `GU_2(3)` too: its commutator subgroup is computed to be all
//!   of `SU_2(3)` in this module's tests); the one genuine
//!   odd-characteristic degeneration is `SL_2(3) ≅ SU_2(3)`, whose
//!   derived subgroup is the quaternion subgroup — those two tiny
//!   groups are enumerated and their commutator subgroups computed
//!   outright;
//! * symplectic groups of rank at least two over odd fields are
//!   perfect;
//! * special orthogonal groups have derived subgroup of index two
//!   (the kernel of the spinor norm); an element of odd order is a
//!   square, hence lies in it.  For elements of even order the spinor
//!   norm is not computed and the verdict is honest ignorance.

use algebra_core::Matrix;

use crate::group::MatrixGroup;
use crate::spec::{Family, GroupSpec};
use crate::GroupError;

/// A three-valued membership verdict with a stated method.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedMembership {
    Yes(&'static str),
    No(&'static str),
    Undecidable(&'static str),
}

impl DerivedMembership {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            DerivedMembership::Yes(_) => Some(true),
            DerivedMembership::No(_) => Some(false),
            DerivedMembership::Undecidable(_) => None,
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            DerivedMembership::Yes(r)
            | DerivedMembership::No(r)
            | DerivedMembership::Undecidable(r) => r,
        }
    }
}

/// Decides whether `m` lies in the derived subgroup of the group
/// described by `spec`.
pub fn in_derived_subgroup(
    spec: &GroupSpec,
    m: &Matrix,
) -> Result<DerivedMembership, GroupError> {
    if !spec.contains(m)? {
        return Err(GroupError::NotInGroup(format!("{spec}")));
    }
    let one = m.field().one();
    let det_is_one = m.det() == one;
    // The special groups of rank two over GF(3) degenerate: SL_2(3) and
    // SU_2(3) have the quaternion group as derived subgroup.  They are
    // tiny, so their commutator subgroups are computed outright.
    let degenerate_rank_two =
        spec.rank() == 2 && spec.q() == 3 && matches!(spec.family(), Family::SL | Family::SU);
    if degenerate_rank_two {
        return Ok(if commutator_subgroup_contains(spec, m)? {
            DerivedMembership::Yes("member of the explicitly computed commutator subgroup")
        } else {
            DerivedMembership::No("not a member of the explicitly computed commutator subgroup")
        });
    }
    Ok(match spec.family() {
        Family::GL => {
            // GL_n(q)' = SL_n(q) for odd q (this includes GL_2(3)).
            if det_is_one {
                DerivedMembership::Yes(
                    "determinant one: the derived subgroup is the special linear subgroup",
                )
            } else {
                DerivedMembership::No("determinant differs from one")
            }
        }
        Family::GU => {
            if det_is_one {
                DerivedMembership::Yes(
                    "determinant one: the derived subgroup is the special unitary subgroup",
                )
            } else {
                DerivedMembership::No("determinant differs from one")
            }
        }
        Family::SL | Family::SU => {
            DerivedMembership::Yes("the group is perfect for these parameters")
        }
        Family::Sp => DerivedMembership::Yes(
            "symplectic groups of rank at least two over odd fields are perfect",
        ),
        Family::SOodd | Family::SOplus | Family::SOminus => {
            let order = m.multiplicative_order(100_000_000)?;
            if order % 2 == 1 {
                DerivedMembership::Yes(
                    "odd order: the element is a square, hence lies in the \
                     index-two derived subgroup",
                )
            } else {
                DerivedMembership::Undecidable(
                    "even order: the spinor norm is not computed here",
                )
            }
        }
    })
}

/// Enumerates the (small) group, generates its commutator subgroup from
/// all pairwise commutators, and tests membership.
fn commutator_subgroup_contains(spec: &GroupSpec, m: &Matrix) -> Result<bool, GroupError> {
    let group = MatrixGroup::enumerate(spec, 10_000)?;
    let n = group.order() as u32;
    let mut seen = std::collections::HashSet::new();
    let mut commutators = Vec::new();
    for i in 0..n {
        let a = group.element(i);
        let ai = a.inverse().map_err(GroupError::Algebra)?;
        for j in 0..n {
            let b = group.element(j);
            let bi = b.inverse().map_err(GroupError::Algebra)?;
            let c = a.mul(&b).mul(&ai).mul(&bi);
            if seen.insert(crate::group::pack_matrix(&c)) {
                commutators.push(c);
            }
        }
    }
    let derived = MatrixGroup::from_generators(&commutators, 10_000)?;
    Ok(derived.contains_element(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::Matrix;

    fn spec(family: Family, n: usize, q: u64) -> GroupSpec {
        GroupSpec::new(family, n, q).unwrap()
    }

    #[test]
    fn determinant_decides_linear_families() {
        let gl = spec(Family::GL, 3, 3);
        let field = gl.entry_field().unwrap();
        let bad = Matrix::from_i64(&field, &[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(in_derived_subgroup(&gl, &bad).unwrap().as_bool(), Some(false));
        let mut good = Matrix::identity(&field, 3);
        good.set(0, 1, field.one());
        assert_eq!(in_derived_subgroup(&gl, &good).unwrap().as_bool(), Some(true));

        let gu = spec(Family::GU, 3, 3);
        let f9 = gu.entry_field().unwrap();
        let torus = gu
            .generators()
            .unwrap()
            .into_iter()
            .find(|g| g.det() != f9.one())
            .expect("the unitary torus generator has nontrivial determinant");
        assert_eq!(in_derived_subgroup(&gu, &torus).unwrap().as_bool(), Some(false));
        assert_eq!(
            in_derived_subgroup(&gu, &Matrix::identity(&f9, 3))
                .unwrap()
                .as_bool(),
            Some(true)
        );
    }

    #[test]
    fn symplectic_groups_are_perfect() {
        let sp = spec(Family::Sp, 2, 3);
        let field = sp.entry_field().unwrap();
        let form = crate::spec::symplectic_form(&field, 2);
        let verdict = in_derived_subgroup(&sp, &form).unwrap();
        assert_eq!(verdict.as_bool(), Some(true));
        assert!(verdict.reason().contains("perfect"));
    }

    #[test]
    fn orthogonal_groups_certify_odd_order_only() {
        let so = spec(Family::SOodd, 2, 3);
        // An element of order 3: the image of a unipotent of GL_2(3) under
        // the odd embedding.
        let f3 = so.entry_field().unwrap();
        let u = Matrix::from_i64(&f3, &[vec![1, 1], vec![0, 1]]);
        let em = crate::embeddings::psi_odd(&u);
        assert!(so.contains(&em).unwrap());
        assert_eq!(em.multiplicative_order(10).unwrap(), 3);
        assert_eq!(in_derived_subgroup(&so, &em).unwrap().as_bool(), Some(true));
        // An element of even order gets an honest non-answer.
        let even = so
            .generators()
            .unwrap()
            .into_iter()
            .find(|g| g.multiplicative_order(1000).unwrap() % 2 == 0)
            .expect("some product of two reflections has even order");
        assert_eq!(in_derived_subgroup(&so, &even).unwrap().as_bool(), None);
    }

    #[test]
    fn rank_two_degenerations_over_gf3() {
        // SL_2(3)' is the quaternion group: the six order-4 elements and
        // the center belong, the order-3 elements do not.
        let sl = spec(Family::SL, 2, 3);
        let field = sl.entry_field().unwrap();
        let u = Matrix::from_i64(&field, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(u.multiplicative_order(10).unwrap(), 3);
        assert_eq!(in_derived_subgroup(&sl, &u).unwrap().as_bool(), Some(false));
        let w = Matrix::from_i64(&field, &[vec![0, -1], vec![1, 0]]);
        assert_eq!(w.multiplicative_order(10).unwrap(), 4);
        assert_eq!(in_derived_subgroup(&sl, &w).unwrap().as_bool(), Some(true));
        assert_eq!(
            in_derived_subgroup(&sl, &Matrix::identity(&field, 2).neg())
                .unwrap()
                .as_bool(),
            Some(true)
        );

        // GU_2(3)' is, by direct computation, all of SU_2(3): the torus
        // commutators sweep past the quaternion subgroup that [SU, SU]
        // alone reaches.  The determinant therefore decides membership,
        // and the verdicts must match the explicitly computed subgroup on
        // every one of the 96 elements.
        let gu = spec(Family::GU, 2, 3);
        let group = MatrixGroup::enumerate(&gu, 10_000).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut commutators = Vec::new();
        for i in 0..group.order() as u32 {
            let a = group.element(i);
            let ai = a.inverse().unwrap();
            for j in 0..group.order() as u32 {
                let b = group.element(j);
                let c = a.mul(&b).mul(&ai).mul(&b.inverse().unwrap());
                if seen.insert(crate::group::pack_matrix(&c)) {
                    commutators.push(c);
                }
            }
        }
        let derived = MatrixGroup::from_generators(&commutators, 10_000).unwrap();
        assert_eq!(
            derived.order(),
            24,
            "the commutator subgroup of GU_2(3) is the full special unitary subgroup"
        );
        for i in 0..group.order() as u32 {
            let m = group.element(i);
            let verdict = in_derived_subgroup(&gu, &m).unwrap();
            assert_eq!(
                verdict.as_bool(),
                Some(derived.contains_element(&m)),
                "verdict matches the explicit commutator subgroup"
            );
        }
    }
}
