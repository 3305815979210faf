//! Fully enumerated 3x3 matrix groups over small fields, packed into `u64`
//! keys so that groups of a few million elements fit comfortably in memory.
//!
//! A matrix is stored row-major as nine field-element indices (an element's
//! index is its ascending coefficient word read as a base-p number, the
//! same order `FieldDescriptor::elements` enumerates), and the nine digits
//! are packed base-q into one `u64`.  Field arithmetic runs on precomputed
//! q-by-q tables, so multiplying two group elements never touches big
//! integers.  For fields small enough that `q^9` is addressable, a direct
//! lookup table maps keys to element indices; larger fields fall back to
//! binary search over the sorted key list.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use algebra_core::{FieldDescriptor, FieldElement, Matrix};
use anyhow::{ensure, Context, Result};
use chartab::GroupOps;
use group_engine::GroupSpec;
use num_bigint::BigUint;

const DIM: usize = 3;
const ENTRIES: usize = DIM * DIM;

/// Largest `q^9` for which the key -> index table is allocated directly
/// (just above `7^9 = 40,353,607`; a `u32` entry per key is ~162 MB).
const DIRECT_INDEX_LIMIT: u64 = 50_000_000;

type Digits = [u8; ENTRIES];

/// Table-driven arithmetic of a field with at most 25 elements.
pub struct SmallField {
    q: u64,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl SmallField {
    pub fn new(fd: &Arc<FieldDescriptor>) -> SmallField {
        let q = fd.size();
        let elements: Vec<FieldElement> = fd.elements().collect();
        let index_of = |e: &FieldElement| -> usize {
            e.coeffs()
                .iter()
                .rev()
                .fold(0u64, |acc, &c| acc * fd.characteristic() + c) as usize
        };
        let mut add = vec![0u8; (q * q) as usize];
        let mut mul = vec![0u8; (q * q) as usize];
        let mut neg = vec![0u8; q as usize];
        let mut inv = vec![0u8; q as usize];
        for (i, a) in elements.iter().enumerate() {
            neg[i] = index_of(&a.neg()) as u8;
            if i != 0 {
                inv[i] = index_of(&a.inverse().expect("nonzero elements invert")) as u8;
            }
            for (j, b) in elements.iter().enumerate() {
                add[i * q as usize + j] = index_of(&a.add(b)) as u8;
                mul[i * q as usize + j] = index_of(&a.mul(b)) as u8;
            }
        }
        SmallField { q, add, mul, neg, inv }
    }

    #[inline]
    fn add_d(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    fn mul_d(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    fn sub_d(&self, a: u8, b: u8) -> u8 {
        self.add_d(a, self.neg[b as usize])
    }
}

fn pack(q: u64, m: &Digits) -> u64 {
    m.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64)
}

fn unpack(q: u64, mut key: u64) -> Digits {
    let mut m = [0u8; ENTRIES];
    for d in m.iter_mut() {
        *d = (key % q) as u8;
        key /= q;
    }
    m
}

fn identity_digits() -> Digits {
    let mut m = [0u8; ENTRIES];
    m[0] = 1;
    m[4] = 1;
    m[8] = 1;
    m
}

fn mat_mul(f: &SmallField, a: &Digits, b: &Digits) -> Digits {
    let mut out = [0u8; ENTRIES];
    for r in 0..DIM {
        for c in 0..DIM {
            let mut acc = 0u8;
            for t in 0..DIM {
                acc = f.add_d(acc, f.mul_d(a[DIM * r + t], b[DIM * t + c]));
            }
            out[DIM * r + c] = acc;
        }
    }
    out
}

/// Inverse by the adjugate formula; the input must be invertible.
fn mat_inv(f: &SmallField, a: &Digits) -> Digits {
    let m = |r: usize, c: usize| a[DIM * r + c];
    let cof = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..DIM).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..DIM).filter(|&j| j != c).collect();
        let minor = f.sub_d(
            f.mul_d(m(rows[0], cols[0]), m(rows[1], cols[1])),
            f.mul_d(m(rows[0], cols[1]), m(rows[1], cols[0])),
        );
        if (r + c) % 2 == 1 {
            f.neg[minor as usize]
        } else {
            minor
        }
    };
    let det = (0..DIM).fold(0u8, |acc, c| f.add_d(acc, f.mul_d(m(0, c), cof(0, c))));
    assert!(det != 0, "matrix is singular");
    let det_inv = f.inv[det as usize];
    let mut out = [0u8; ENTRIES];
    for r in 0..DIM {
        for c in 0..DIM {
            out[DIM * r + c] = f.mul_d(cof(c, r), det_inv);
        }
    }
    out
}

fn digits_of_matrix(fd: &Arc<FieldDescriptor>, m: &Matrix) -> Digits {
    let mut out = [0u8; ENTRIES];
    for r in 0..DIM {
        for c in 0..DIM {
            let idx = m
                .at(r, c)
                .coeffs()
                .iter()
                .rev()
                .fold(0u64, |acc, &x| acc * fd.characteristic() + x);
            out[DIM * r + c] = idx as u8;
        }
    }
    out
}

/// A fully enumerated packed matrix group with conjugacy-class data.
/// Classes are sorted by (element order, class size, least packed member)
/// with the identity class first.
pub struct PackedGroup {
    label: String,
    field: SmallField,
    keys: Vec<u64>,
    direct: Option<Vec<u32>>,
    class_ids: Vec<u32>,
    reps: Vec<u64>,
    sizes: Vec<u64>,
    orders: Vec<u64>,
    members: Vec<Vec<u32>>,
}

impl PackedGroup {
    /// Enumerates the 3x3 group described by `spec` from its generators and
    /// checks the element count against the order formula of the family.
    pub fn enumerate(spec: &GroupSpec) -> Result<PackedGroup> {
        ensure!(spec.dim() == DIM, "only 3x3 groups are packed");
        let fd = spec.entry_field()?;
        ensure!(fd.size() <= 25, "entry field too large to tabulate");
        let field = SmallField::new(&fd);
        let q = field.q;
        let gens: Vec<Digits> = spec
            .generators()
            .context("the family must expose generators")?
            .iter()
            .map(|g| digits_of_matrix(&fd, g))
            .collect();

        let mut seen: HashSet<u64> = HashSet::new();
        let identity = pack(q, &identity_digits());
        seen.insert(identity);
        let mut queue = VecDeque::from([identity]);
        while let Some(key) = queue.pop_front() {
            let m = unpack(q, key);
            for g in &gens {
                let next = pack(q, &mat_mul(&field, &m, g));
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        ensure!(
            BigUint::from(seen.len()) == spec.order(),
            "enumerated {} elements of {spec}, expected {}",
            seen.len(),
            spec.order()
        );
        let mut keys: Vec<u64> = seen.into_iter().collect();
        keys.sort_unstable();

        let q9 = (0..ENTRIES as u32).try_fold(1u64, |acc, _| acc.checked_mul(q));
        let direct = match q9 {
            Some(total) if total <= DIRECT_INDEX_LIMIT => {
                let mut table = vec![0u32; total as usize];
                for (idx, &key) in keys.iter().enumerate() {
                    table[key as usize] = idx as u32 + 1;
                }
                Some(table)
            }
            _ => None,
        };
        let index_of = |key: u64| -> usize {
            match &direct {
                Some(table) => {
                    let slot = table[key as usize];
                    assert!(slot != 0, "element outside the enumerated group");
                    slot as usize - 1
                }
                None => keys
                    .binary_search(&key)
                    .expect("element outside the enumerated group"),
            }
        };

        let conjugators: Vec<(Digits, Digits)> = gens
            .iter()
            .map(|g| (mat_inv(&field, g), *g))
            .collect();
        let mut class_ids = vec![u32::MAX; keys.len()];
        let mut found: Vec<(u64, u64, u64, Vec<u32>)> = Vec::new();
        for start in 0..keys.len() {
            if class_ids[start] != u32::MAX {
                continue;
            }
            let provisional = found.len() as u32;
            class_ids[start] = provisional;
            let mut members = vec![start as u32];
            let mut stack = vec![start];
            while let Some(idx) = stack.pop() {
                let el = unpack(q, keys[idx]);
                for (ginv, g) in &conjugators {
                    let conj = mat_mul(&field, &mat_mul(&field, ginv, &el), g);
                    let j = index_of(pack(q, &conj));
                    if class_ids[j] == u32::MAX {
                        class_ids[j] = provisional;
                        members.push(j as u32);
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            let rep_key = keys[members[0] as usize];
            let order = element_order(&field, q, rep_key);
            found.push((order, members.len() as u64, rep_key, members));
        }
        found.sort_by_key(|&(order, size, rep_key, _)| (order, size, rep_key));
        ensure!(
            found[0].0 == 1 && found[0].1 == 1,
            "identity class must sort first"
        );

        let mut sorted_ids = vec![0u32; keys.len()];
        let mut reps = Vec::with_capacity(found.len());
        let mut sizes = Vec::with_capacity(found.len());
        let mut orders = Vec::with_capacity(found.len());
        let mut members_by_class = Vec::with_capacity(found.len());
        for (id, (order, size, rep_key, members)) in found.into_iter().enumerate() {
            for &m in &members {
                sorted_ids[m as usize] = id as u32;
            }
            reps.push(rep_key);
            sizes.push(size);
            orders.push(order);
            members_by_class.push(members);
        }
        Ok(PackedGroup {
            label: spec.to_string(),
            field,
            keys,
            direct,
            class_ids: sorted_ids,
            reps,
            sizes,
            orders,
            members: members_by_class,
        })
    }

    fn index_of(&self, key: u64) -> usize {
        match &self.direct {
            Some(table) => {
                let slot = table[key as usize];
                assert!(slot != 0, "element outside the enumerated group");
                slot as usize - 1
            }
            None => self
                .keys
                .binary_search(&key)
                .expect("element outside the enumerated group"),
        }
    }
}

fn element_order(f: &SmallField, q: u64, key: u64) -> u64 {
    let m = unpack(q, key);
    let id = identity_digits();
    let mut power = m;
    let mut ord = 1u64;
    while power != id {
        power = mat_mul(f, &power, &m);
        ord += 1;
    }
    ord
}

impl GroupOps for PackedGroup {
    type El = u64;

    fn label(&self) -> String {
        self.label.clone()
    }

    fn order(&self) -> u64 {
        self.keys.len() as u64
    }

    fn num_classes(&self) -> usize {
        self.reps.len()
    }

    fn class_size(&self, class: usize) -> u64 {
        self.sizes[class]
    }

    fn class_rep(&self, class: usize) -> u64 {
        self.reps[class]
    }

    fn class_members(&self, class: usize) -> Vec<u64> {
        self.members[class]
            .iter()
            .map(|&idx| self.keys[idx as usize])
            .collect()
    }

    fn class_of(&self, el: &u64) -> usize {
        self.class_ids[self.index_of(*el)] as usize
    }

    fn identity(&self) -> u64 {
        pack(self.field.q, &identity_digits())
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let q = self.field.q;
        pack(q, &mat_mul(&self.field, &unpack(q, *a), &unpack(q, *b)))
    }

    fn inv(&self, a: &u64) -> u64 {
        let q = self.field.q;
        pack(q, &mat_inv(&self.field, &unpack(q, *a)))
    }

    fn rep_order(&self, class: usize) -> u64 {
        self.orders[class]
    }
}
