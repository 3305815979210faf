//! Group interface consumed by the table algorithms.
//!
//! The table computation needs very little from a group: its conjugacy
//! classes with sizes and representatives, the ability to multiply and
//! invert elements, and membership of an element in a class.  [`GroupOps`]
//! captures exactly that, so matrix groups and any other concrete group
//! model (for instance permutation groups used to prepare bundled fixtures)
//! can share one implementation of the algorithms.
//!
//! Classes are indexed `0..num_classes()` in a fixed order with the class of
//! the identity first; every derived quantity (exponent, inverse classes,
//! power maps) is computed from the required methods.

use std::hash::Hash;

use algebra_core::{arith, Matrix};
use group_engine::MatrixGroup;

/// Minimal interface to a finite group with known conjugacy classes.
///
/// Implementations must list the class of the identity element at index 0.
/// `class_of` may panic when handed an element that is not in the group;
/// the algorithms only ever pass products of listed members.
pub trait GroupOps {
    /// Element representation.
    type El: Clone + Eq + Hash;

    /// Short name used as the table label.
    fn label(&self) -> String;

    /// Number of elements.
    fn order(&self) -> u64;

    /// Number of conjugacy classes.
    fn num_classes(&self) -> usize;

    /// Size of the given class.
    fn class_size(&self, class: usize) -> u64;

    /// The fixed representative of the given class.
    fn class_rep(&self, class: usize) -> Self::El;

    /// All members of the given class.
    fn class_members(&self, class: usize) -> Vec<Self::El>;

    /// Index of the class containing `el`.
    fn class_of(&self, el: &Self::El) -> usize;

    /// The identity element.
    fn identity(&self) -> Self::El;

    /// Product `a * b`.
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;

    /// Inverse of `a`.
    fn inv(&self, a: &Self::El) -> Self::El;

    /// Order of the class representative (hence of every member).
    fn rep_order(&self, class: usize) -> u64 {
        let rep = self.class_rep(class);
        let id = self.identity();
        let mut power = rep.clone();
        let mut ord = 1;
        while power != id {
            power = self.mul(&power, &rep);
            ord += 1;
        }
        ord
    }

    /// Exponent of the group: the least common multiple of all element
    /// orders, which equals the lcm over class representatives.
    fn exponent(&self) -> u64 {
        (0..self.num_classes()).fold(1, |acc, i| arith::lcm(acc, self.rep_order(i)))
    }

    /// Index of the class of inverses of the given class.
    fn inverse_class(&self, class: usize) -> usize {
        self.class_of(&self.inv(&self.class_rep(class)))
    }

    /// Classes of `rep^0, rep^1, ..., rep^(o-1)` where `o` is the
    /// representative order; entry 0 is always the identity class.
    fn power_classes(&self, class: usize) -> Vec<usize> {
        let rep = self.class_rep(class);
        let ord = self.rep_order(class);
        let mut classes = Vec::with_capacity(ord as usize);
        let mut power = self.identity();
        for _ in 0..ord {
            classes.push(self.class_of(&power));
            power = self.mul(&power, &rep);
        }
        classes
    }
}

impl GroupOps for MatrixGroup {
    type El = Matrix;

    fn label(&self) -> String {
        match self.spec() {
            Some(spec) => spec.to_string(),
            None => format!("G{}", self.order()),
        }
    }

    fn order(&self) -> u64 {
        MatrixGroup::order(self)
    }

    fn num_classes(&self) -> usize {
        MatrixGroup::num_classes(self)
    }

    fn class_size(&self, class: usize) -> u64 {
        self.conjugacy_data().size(class)
    }

    fn class_rep(&self, class: usize) -> Matrix {
        self.class_representative(class)
    }

    fn class_members(&self, class: usize) -> Vec<Matrix> {
        MatrixGroup::class_members(self, class)
    }

    fn class_of(&self, el: &Matrix) -> usize {
        self.class_of_element(el)
            .expect("element outside the enumerated group")
    }

    fn identity(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim())
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b)
    }

    fn inv(&self, a: &Matrix) -> Matrix {
        a.inverse().expect("group elements are invertible")
    }

    fn rep_order(&self, class: usize) -> u64 {
        self.conjugacy_data().order_of_class(class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use group_engine::{Family, GroupSpec, DEFAULT_ENUMERATION_CAP};

    fn group(family: Family, n: usize, q: u64) -> MatrixGroup {
        let spec = GroupSpec::new(family, n, q).unwrap();
        MatrixGroup::enumerate(&spec, DEFAULT_ENUMERATION_CAP).unwrap()
    }

    #[test]
    fn exponent_and_inverse_classes_of_sl2_3() {
        let g = group(Family::SL, 2, 3);
        assert_eq!(g.exponent(), 12);
        for class in 0..GroupOps::num_classes(&g) {
            let inverse = g.inverse_class(class);
            // Taking inverses twice returns to the original class, and
            // orders and sizes are preserved.
            assert_eq!(g.inverse_class(inverse), class);
            assert_eq!(GroupOps::rep_order(&g, class), GroupOps::rep_order(&g, inverse));
            assert_eq!(g.class_size(class), g.class_size(inverse));
        }
        // The two classes of element order 3 are swapped by inversion in
        // SL2(3); the identity and central classes are fixed.
        assert_eq!(g.inverse_class(0), 0);
    }

    #[test]
    fn power_classes_follow_representative_powers() {
        let g = group(Family::SL, 2, 3);
        for class in 0..GroupOps::num_classes(&g) {
            let powers = g.power_classes(class);
            assert_eq!(powers.len() as u64, GroupOps::rep_order(&g, class));
            assert_eq!(powers[0], 0);
            if powers.len() > 1 {
                assert_eq!(powers[1], class);
            }
            // The last power is the inverse of the representative.
            assert_eq!(powers[powers.len() - 1], g.inverse_class(class));
        }
    }

    #[test]
    fn labels_name_the_construction() {
        let g = group(Family::GL, 2, 3);
        assert_eq!(GroupOps::label(&g), "GL2(3)");
        let identity = GroupOps::identity(&g);
        let anon = MatrixGroup::from_generators(&[identity], 10).unwrap();
        assert_eq!(GroupOps::label(&anon), "G1");
    }
}
