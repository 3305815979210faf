//! Explicit enumeration of small matrix groups and their conjugacy classes.
//!
//! Elements are stored packed — one `u64` per matrix entry, encoding the
//! coefficient vector of the field element in base `p` — which keeps even
//! the fifty-thousand-element groups comfortably in memory.  Enumeration
//! is a breadth-first closure over a generating set, and conjugacy classes
//! are orbits of the conjugation action, seeded in a canonical order so
//! that the resulting class list does not depend on the generating set.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::Arc;

use algebra_core::{FieldDescriptor, Matrix};
use num_bigint::BigUint;
use once_cell::sync::OnceCell;

use crate::spec::GroupSpec;
use crate::GroupError;

/// Default ceiling on the number of elements an enumeration will visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

/// Packs a matrix into one `u64` per entry (base-`p` digits of the
/// coefficient vector).  The packing is injective for a fixed field and
/// size, and the induced lexicographic order is the canonical element
/// order used throughout.
pub fn pack_matrix(m: &Matrix) -> Box<[u64]> {
    let p = m.field().characteristic();
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let mut v: u64 = 0;
            for &digit in m.at(r, c).coeffs().iter().rev() {
                v = v * p + digit;
            }
            out.push(v);
        }
    }
    out.into_boxed_slice()
}

fn unpack_matrix(field: &Arc<FieldDescriptor>, dim: usize, packed: &[u64]) -> Matrix {
    let p = field.characteristic();
    let k = field.degree() as usize;
    let mut m = Matrix::zeros(field, dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let mut v = packed[r * dim + c];
            let mut coeffs = vec![0u64; k];
            for slot in coeffs.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            m.set(
                r,
                c,
                field
                    .element_from_coeffs(&coeffs)
                    .expect("packed entry lies in the field"),
            );
        }
    }
    m
}

/// Conjugacy data of an enumerated group, in canonical order: classes are
/// sorted by (element order, class size, packed representative), with the
/// identity class first.
#[derive(Debug)]
pub struct ClassData {
    /// Packed representative of each class (the least element of the class).
    reps: Vec<Box<[u64]>>,
    /// Class sizes.
    sizes: Vec<u64>,
    /// Multiplicative order of (every element of) each class.
    orders: Vec<u64>,
    /// Element index → class index.
    class_of: Vec<u32>,
    /// Class index → member element indices.
    members: Vec<Vec<u32>>,
}

impl ClassData {
    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn size(&self, class: usize) -> u64 {
        self.sizes[class]
    }

    pub fn order_of_class(&self, class: usize) -> u64 {
        self.orders[class]
    }

    pub fn members(&self, class: usize) -> &[u32] {
        &self.members[class]
    }
}

/// A fully enumerated finite matrix group.
///
/// The `Debug` form reports the specification and order only; the element
/// list would be unreadable.
pub struct MatrixGroup {
    spec: Option<GroupSpec>,
    field: Arc<FieldDescriptor>,
    dim: usize,
    generators: Vec<Matrix>,
    elements: Vec<Box<[u64]>>,
    index: HashMap<Box<[u64]>, u32>,
    classes: OnceCell<ClassData>,
}

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("spec", &self.spec)
            .field("dim", &self.dim)
            .field("order", &self.elements.len())
            .finish_non_exhaustive()
    }
}

impl MatrixGroup {
    /// Enumerates the group described by `spec`, refusing if its order
    /// exceeds `cap`.  The element count is checked against the exact
    /// group order, so an inadequate generating set is an error rather
    /// than a silently smaller group.
    pub fn enumerate(spec: &GroupSpec, cap: u64) -> Result<MatrixGroup, GroupError> {
        let order = spec.order();
        if order > BigUint::from(cap) {
            return Err(GroupError::Unenumerable { order, cap });
        }
        let generators = spec.generators()?;
        let field = spec.entry_field()?;
        let dim = spec.dim();
        let mut group = enumerate_closure(&field, dim, &generators, cap)?;
        if BigUint::from(group.elements.len() as u64) != order {
            return Err(GroupError::EnumerationMismatch {
                expected: order,
                found: group.elements.len() as u64,
            });
        }
        group.spec = Some(spec.clone());
        Ok(group)
    }

    /// Enumerates the subgroup generated by explicit matrices (all square
    /// of equal size over one field).
    pub fn from_generators(generators: &[Matrix], cap: u64) -> Result<MatrixGroup, GroupError> {
        let first = generators
            .first()
            .ok_or_else(|| GroupError::NoGenerators("empty generating set".into()))?;
        enumerate_closure(first.field(), first.nrows(), generators, cap)
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// The matrix at a given element index (indices follow the canonical
    /// packed order).
    pub fn element(&self, idx: u32) -> Matrix {
        unpack_matrix(&self.field, self.dim, &self.elements[idx as usize])
    }

    pub fn index_of(&self, m: &Matrix) -> Option<u32> {
        self.index.get(&pack_matrix(m)).copied()
    }

    pub fn contains_element(&self, m: &Matrix) -> bool {
        self.index_of(m).is_some()
    }

    /// The conjugacy classes, computed on first use.
    pub fn conjugacy_data(&self) -> &ClassData {
        self.classes.get_or_init(|| self.compute_classes())
    }

    pub fn num_classes(&self) -> usize {
        self.conjugacy_data().num_classes()
    }

    pub fn class_representative(&self, class: usize) -> Matrix {
        let packed = &self.conjugacy_data().reps[class];
        unpack_matrix(&self.field, self.dim, packed)
    }

    pub fn class_of_element(&self, m: &Matrix) -> Option<usize> {
        let idx = self.index_of(m)?;
        Some(self.conjugacy_data().class_of[idx as usize] as usize)
    }

    /// All elements of a class, as matrices.
    pub fn class_members(&self, class: usize) -> Vec<Matrix> {
        self.conjugacy_data().members[class]
            .iter()
            .map(|&i| self.element(i))
            .collect()
    }

    /// Scans the whole group for a conjugator `t` with `t·a·t⁻¹ = b`.
    pub fn transporter(&self, a: &Matrix, b: &Matrix) -> Option<Matrix> {
        for packed in &self.elements {
            let t = unpack_matrix(&self.field, self.dim, packed);
            let ti = t.inverse().expect("group elements are invertible");
            if t.mul(a).mul(&ti) == *b {
                return Some(t);
            }
        }
        None
    }

    fn compute_classes(&self) -> ClassData {
        let n = self.elements.len();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<(u64, u64, u32, Vec<u32>)> = Vec::new();
        let gens: Vec<(Matrix, Matrix)> = self
            .generators
            .iter()
            .map(|g| {
                (
                    g.clone(),
                    g.inverse().expect("group elements are invertible"),
                )
            })
            .collect();
        // Elements are stored sorted, so scanning by index seeds every
        // class at its least element, independent of the generating set.
        for seed in 0..n as u32 {
            if class_of[seed as usize] != u32::MAX {
                continue;
            }
            let class_idx = raw.len() as u32;
            let mut members = vec![seed];
            class_of[seed as usize] = class_idx;
            let mut queue = VecDeque::from([seed]);
            while let Some(cur) = queue.pop_front() {
                let m = self.element(cur);
                for (g, gi) in &gens {
                    let conj = g.mul(&m).mul(gi);
                    let idx = self
                        .index
                        .get(&pack_matrix(&conj))
                        .copied()
                        .expect("conjugate of a group element is a group element");
                    if class_of[idx as usize] == u32::MAX {
                        class_of[idx as usize] = class_idx;
                        members.push(idx);
                        queue.push_back(idx);
                    }
                }
            }
            members.sort_unstable();
            let order = self
                .element(seed)
                .multiplicative_order(self.order())
                .expect("element order divides the group order");
            raw.push((order, members.len() as u64, seed, members));
        }
        // Canonical class order: element order, then class size, then the
        // packed representative (seed index already reflects packed order).
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by_key(|&i| (raw[i].0, raw[i].1, raw[i].2));
        let mut reps = Vec::with_capacity(raw.len());
        let mut sizes = Vec::with_capacity(raw.len());
        let mut orders = Vec::with_capacity(raw.len());
        let mut members = Vec::with_capacity(raw.len());
        for (new_idx, &old_idx) in perm.iter().enumerate() {
            let (order, size, seed, mem) = &raw[old_idx];
            reps.push(self.elements[*seed as usize].clone());
            sizes.push(*size);
            orders.push(*order);
            members.push(mem.clone());
            for &m in mem {
                class_of[m as usize] = new_idx as u32;
            }
        }
        ClassData {
            reps,
            sizes,
            orders,
            class_of,
            members,
        }
    }
}

fn enumerate_closure(
    field: &Arc<FieldDescriptor>,
    dim: usize,
    generators: &[Matrix],
    cap: u64,
) -> Result<MatrixGroup, GroupError> {
    for g in generators {
        if g.field() != field || g.nrows() != dim || g.ncols() != dim {
            return Err(GroupError::FieldMismatch(
                "generators must be square matrices of one size over one field".into(),
            ));
        }
    }
    let identity = Matrix::identity(field, dim);
    let mut index: HashMap<Box<[u64]>, u32> = HashMap::new();
    let mut order_insensitive: Vec<Box<[u64]>> = Vec::new();
    index.insert(pack_matrix(&identity), 0);
    order_insensitive.push(pack_matrix(&identity));
    let mut frontier: VecDeque<Matrix> = VecDeque::from([identity]);
    while let Some(m) = frontier.pop_front() {
        for g in generators {
            let next = m.mul(g);
            let packed = pack_matrix(&next);
            if !index.contains_key(&packed) {
                if order_insensitive.len() as u64 >= cap {
                    return Err(GroupError::Unenumerable {
                        order: BigUint::from(cap) + BigUint::from(1u32),
                        cap,
                    });
                }
                index.insert(packed.clone(), order_insensitive.len() as u32);
                order_insensitive.push(packed);
                frontier.push_back(next);
            }
        }
    }
    // Re-sort elements into canonical packed order and rebuild the index,
    // so element indices are independent of the generating set.
    let mut elements = order_insensitive;
    elements.sort_unstable();
    let mut index = HashMap::with_capacity(elements.len());
    for (i, packed) in elements.iter().enumerate() {
        index.insert(packed.clone(), i as u32);
    }
    Ok(MatrixGroup {
        spec: None,
        field: field.clone(),
        dim,
        generators: generators.to_vec(),
        elements,
        index,
        classes: OnceCell::new(),
    })
}

/// Deterministic pseudo-random walk through a group given by generators:
/// returns the product of `steps` generator factors chosen by a simple
/// splitmix64 stream from `seed`.  Used by tests that need "random-ish"
/// elements of groups too large to enumerate.
pub fn generator_walk(generators: &[Matrix], seed: u64, steps: usize) -> Matrix {
    let field = generators[0].field().clone();
    let dim = generators[0].nrows();
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    let mut m = Matrix::identity(&field, dim);
    for _ in 0..steps {
        let pick = (next() % generators.len() as u64) as usize;
        m = m.mul(&generators[pick]);
    }
    m
}
