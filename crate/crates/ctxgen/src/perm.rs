//! Permutations on a small fixed point set, a verified stabilizer chain,
//! and fully enumerated permutation groups with conjugacy-class data.
//!
//! The chain is built by the Schreier--Sims procedure and then checked
//! deterministically: every Schreier generator of every level must sift to
//! the identity through the deeper levels.  After that check the product of
//! the orbit lengths *is* the group order, so the orders asserted by the
//! callers are proofs, not heuristics.

use std::collections::{HashMap, HashSet, VecDeque};

use chartab::GroupOps;

/// Permutation of `0..degree` stored as its image array: `p.images[i]` is
/// the image of point `i`.  Degrees up to 24 pack into a `u128` key (five
/// bits per point), which is the representation used for set membership.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    images: Vec<u8>,
}

/// Largest supported degree: 24 points at five bits each fill a `u128`.
pub const MAX_DEGREE: usize = 24;

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE);
        Perm {
            images: (0..degree as u8).collect(),
        }
    }

    /// Permutation from an image array.
    pub fn from_images(images: Vec<u8>) -> Self {
        assert!(images.len() <= MAX_DEGREE);
        let mut seen = vec![false; images.len()];
        for &img in &images {
            assert!(
                (img as usize) < images.len() && !seen[img as usize],
                "image array is not a bijection"
            );
            seen[img as usize] = true;
        }
        Perm { images }
    }

    /// Permutation from disjoint cycles over `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[u8]]) -> Self {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w] as usize;
                let to = cycle[(w + 1) % cycle.len()];
                assert_eq!(images[from], cycle[w], "cycles are not disjoint");
                images[from] = to;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u8) -> u8 {
        self.images[point as usize]
    }

    /// Product `self * other`: apply `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u8;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| img as usize == i)
    }

    /// Least point moved, if any.
    pub fn first_moved_point(&self) -> Option<u8> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &img)| img as usize != i)
            .map(|(i, _)| i as u8)
    }

    /// Element order: the least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut ord = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                point = self.images[point] as usize;
                len += 1;
            }
            ord = algebra_core::arith::lcm(ord, len);
        }
        ord
    }

    /// Packed key: five bits per point.
    pub fn pack(&self) -> u128 {
        self.images
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &img)| acc | ((img as u128) << (5 * i)))
    }

    pub fn unpack(key: u128, degree: usize) -> Perm {
        let images = (0..degree)
            .map(|i| ((key >> (5 * i)) & 0x1f) as u8)
            .collect();
        Perm { images }
    }

    /// Restriction to the moved points of a generating set, relabelled
    /// `0..m` in ascending order of the original point names.
    pub fn relabel(&self, kept: &[u8]) -> Perm {
        let position: HashMap<u8, u8> = kept
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as u8))
            .collect();
        let images = kept.iter().map(|&old| position[&self.apply(old)]).collect();
        Perm { images }
    }
}

/// One level of a stabilizer chain: a base point and the orbit of that
/// point under the strong generators fixing all earlier base points, with a
/// transversal element `u` per orbit point (`base^u = point`).
struct Level {
    base: u8,
    transversal: HashMap<u8, Perm>,
}

/// Stabilizer chain with a shared strong generating set.  Level `i` uses
/// the strong generators that fix `base[0..i]` pointwise.
pub struct StabChain {
    degree: usize,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds and *verifies* a chain for the group generated by `gens`.
    /// `initial_base` forces the leading base points (so that point
    /// stabilizers of interest appear as levels of the chain).
    pub fn build(gens: &[Perm], degree: usize, initial_base: &[u8]) -> StabChain {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            levels: initial_base
                .iter()
                .map(|&b| {
                    let mut transversal = HashMap::new();
                    transversal.insert(b, Perm::identity(degree));
                    Level { base: b, transversal }
                })
                .collect(),
        };
        for g in gens {
            assert_eq!(g.degree(), degree);
            let (level, residue) = chain.sift_from(0, g.clone());
            if !residue.is_identity() {
                chain.add_strong_generator(level, residue);
            }
        }
        chain.close();
        chain
    }

    /// Strong generators fixing the first `k` base points: generators of
    /// the `k`-th group of the chain (`k = 0` gives the whole group).
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Perm> {
        self.strong
            .iter()
            .filter(|g| self.levels[..k].iter().all(|lvl| g.apply(lvl.base) == lvl.base))
            .cloned()
            .collect()
    }

    /// Group order: the product of the orbit lengths, exact because the
    /// chain has passed the deterministic Schreier-generator check.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|lvl| lvl.transversal.len() as u128)
            .product()
    }

    /// Strips `g` through levels `from..`; returns the first level where
    /// the residue leaves the orbit (or the level count) and the residue.
    fn sift_from(&self, from: usize, mut g: Perm) -> (usize, Perm) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let image = g.apply(level.base);
            match level.transversal.get(&image) {
                Some(u) => g = g.then(&u.inverse()),
                None => return (i, g),
            }
        }
        (self.levels.len(), g)
    }

    /// Installs a new strong generator whose residue surfaced at `level`,
    /// appending a level if the residue fixes every existing base point.
    fn add_strong_generator(&mut self, level: usize, residue: Perm) {
        if level == self.levels.len() {
            let base = residue
                .first_moved_point()
                .expect("identity residues are never installed");
            let mut transversal = HashMap::new();
            transversal.insert(base, Perm::identity(self.degree));
            self.levels.push(Level { base, transversal });
        }
        self.strong.push(residue);
        for i in 0..=level {
            self.recompute_orbit(i);
        }
    }

    /// Recomputes the orbit and transversal of level `i` from scratch.
    fn recompute_orbit(&mut self, i: usize) {
        let gens = self.stabilizer_gens(i);
        let base = self.levels[i].base;
        let mut transversal = HashMap::new();
        transversal.insert(base, Perm::identity(self.degree));
        let mut queue = VecDeque::from([base]);
        while let Some(point) = queue.pop_front() {
            let through = transversal[&point].clone();
            for g in &gens {
                let image = g.apply(point);
                if !transversal.contains_key(&image) {
                    transversal.insert(image, through.then(g));
                    queue.push_back(image);
                }
            }
        }
        self.levels[i].transversal = transversal;
    }

    /// Deterministic completion: every Schreier generator of every level
    /// must sift to the identity through the deeper levels; residues are
    /// installed as new strong generators until a full pass is clean.
    fn close(&mut self) {
        'passes: loop {
            for i in 0..self.levels.len() {
                let gens = self.stabilizer_gens(i);
                let mut points: Vec<u8> = self.levels[i].transversal.keys().copied().collect();
                points.sort_unstable();
                for alpha in points {
                    let u_alpha = self.levels[i].transversal[&alpha].clone();
                    for g in &gens {
                        let beta = g.apply(alpha);
                        let u_beta = self.levels[i].transversal[&beta].clone();
                        let schreier = u_alpha.then(g).then(&u_beta.inverse());
                        if schreier.is_identity() {
                            continue;
                        }
                        let (level, residue) = self.sift_from(i + 1, schreier);
                        if !residue.is_identity() {
                            self.add_strong_generator(level, residue);
                            continue 'passes;
                        }
                    }
                }
            }
            return;
        }
    }
}

/// Drops generators whose removal leaves the generated order intact,
/// re-verifying with a fresh chain after every removal.
pub fn reduce_generators(gens: &[Perm], degree: usize, expected_order: u128) -> Vec<Perm> {
    assert_eq!(
        StabChain::build(gens, degree, &[]).order(),
        expected_order,
        "generator reduction started from the wrong group"
    );
    let mut current: Vec<Perm> = gens.to_vec();
    loop {
        let mut removed = false;
        for i in 0..current.len() {
            if current.len() <= 2 {
                break;
            }
            let mut trial = current.clone();
            trial.remove(i);
            if StabChain::build(&trial, degree, &[]).order() == expected_order {
                current = trial;
                removed = true;
                break;
            }
        }
        if !removed {
            return current;
        }
    }
}

/// A fully enumerated permutation group with conjugacy-class data, in the
/// shape the table algorithms consume.  Classes are sorted by (element
/// order, class size, least packed member) with the identity class first.
pub struct PermGroup {
    label: String,
    degree: usize,
    keys: Vec<u128>,
    class_ids: Vec<u32>,
    reps: Vec<Perm>,
    sizes: Vec<u64>,
    orders: Vec<u64>,
    members: Vec<Vec<u32>>,
}

impl PermGroup {
    pub fn from_generators(label: &str, degree: usize, gens: &[Perm]) -> PermGroup {
        let mut seen: HashSet<u128> = HashSet::new();
        let identity = Perm::identity(degree);
        seen.insert(identity.pack());
        let mut queue = VecDeque::from([identity]);
        while let Some(el) = queue.pop_front() {
            for g in gens {
                let next = el.then(g);
                if seen.insert(next.pack()) {
                    queue.push_back(next);
                }
            }
        }
        let mut keys: Vec<u128> = seen.into_iter().collect();
        keys.sort_unstable();

        // Conjugation orbits under the generators partition the group into
        // its conjugacy classes.
        let index_of = |key: u128| keys.binary_search(&key).expect("closed under products");
        let conjugators: Vec<(Perm, Perm)> =
            gens.iter().map(|g| (g.inverse(), g.clone())).collect();
        let mut class_of = vec![u32::MAX; keys.len()];
        let mut found: Vec<(u64, u64, u128, Vec<u32>)> = Vec::new();
        for start in 0..keys.len() {
            if class_of[start] != u32::MAX {
                continue;
            }
            let provisional = found.len() as u32;
            class_of[start] = provisional;
            let mut members = vec![start as u32];
            let mut stack = vec![start];
            while let Some(idx) = stack.pop() {
                let el = Perm::unpack(keys[idx], degree);
                for (ginv, g) in &conjugators {
                    let conj = ginv.then(&el).then(g);
                    let j = index_of(conj.pack());
                    if class_of[j] == u32::MAX {
                        class_of[j] = provisional;
                        members.push(j as u32);
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            let rep_key = keys[members[0] as usize];
            let order = Perm::unpack(rep_key, degree).order();
            found.push((order, members.len() as u64, rep_key, members));
        }
        found.sort_by_key(|&(order, size, rep_key, _)| (order, size, rep_key));
        assert!(found[0].0 == 1 && found[0].1 == 1, "identity class must sort first");

        let mut class_ids = vec![0u32; keys.len()];
        let mut reps = Vec::with_capacity(found.len());
        let mut sizes = Vec::with_capacity(found.len());
        let mut orders = Vec::with_capacity(found.len());
        let mut members_by_class = Vec::with_capacity(found.len());
        for (id, (order, size, rep_key, members)) in found.into_iter().enumerate() {
            for &m in &members {
                class_ids[m as usize] = id as u32;
            }
            reps.push(Perm::unpack(rep_key, degree));
            sizes.push(size);
            orders.push(order);
            members_by_class.push(members);
        }
        PermGroup {
            label: label.to_string(),
            degree,
            keys,
            class_ids,
            reps,
            sizes,
            orders,
            members: members_by_class,
        }
    }
}

impl GroupOps for PermGroup {
    type El = Perm;

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

    fn class_rep(&self, class: usize) -> Perm {
        self.reps[class].clone()
    }

    fn class_members(&self, class: usize) -> Vec<Perm> {
        self.members[class]
            .iter()
            .map(|&idx| Perm::unpack(self.keys[idx as usize], self.degree))
            .collect()
    }

    fn class_of(&self, el: &Perm) -> usize {
        let idx = self
            .keys
            .binary_search(&el.pack())
            .expect("element outside the enumerated group");
        self.class_ids[idx] as usize
    }

    fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.then(b)
    }

    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }

    fn rep_order(&self, class: usize) -> u64 {
        self.orders[class]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric_gens(n: usize) -> Vec<Perm> {
        vec![
            Perm::from_cycles(n, &[&(0..n as u8).collect::<Vec<_>>()]),
            Perm::from_cycles(n, &[&[0, 1]]),
        ]
    }

    #[test]
    fn cycle_constructor_and_order() {
        let g = Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4]]);
        assert_eq!(g.apply(2), 0);
        assert_eq!(g.apply(4), 3);
        assert_eq!(g.apply(5), 5);
        assert_eq!(g.order(), 6);
        assert!(g.then(&g.inverse()).is_identity());
        assert_eq!(Perm::unpack(g.pack(), 6), g);
    }

    #[test]
    fn chain_orders_of_small_groups() {
        assert_eq!(StabChain::build(&symmetric_gens(5), 5, &[]).order(), 120);
        assert_eq!(StabChain::build(&symmetric_gens(7), 7, &[]).order(), 5040);
        let a5 = vec![
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]),
            Perm::from_cycles(5, &[&[0, 1, 2]]),
        ];
        assert_eq!(StabChain::build(&a5, 5, &[]).order(), 60);
    }

    #[test]
    fn forced_base_exposes_point_stabilizers() {
        let chain = StabChain::build(&symmetric_gens(6), 6, &[0, 1]);
        assert_eq!(chain.order(), 720);
        let stab0 = chain.stabilizer_gens(1);
        assert_eq!(StabChain::build(&stab0, 6, &[]).order(), 120);
        assert!(stab0.iter().all(|g| g.apply(0) == 0));
        let stab01 = chain.stabilizer_gens(2);
        assert_eq!(StabChain::build(&stab01, 6, &[]).order(), 24);
        assert!(stab01.iter().all(|g| g.apply(0) == 0 && g.apply(1) == 1));
    }

    #[test]
    fn generator_reduction_preserves_the_group() {
        let mut gens = symmetric_gens(6);
        // Pad with redundant generators; reduction must drop them.
        gens.push(gens[0].then(&gens[1]));
        gens.push(gens[1].then(&gens[0]).then(&gens[1]));
        let reduced = reduce_generators(&gens, 6, 720);
        assert!(reduced.len() <= 3);
        assert_eq!(StabChain::build(&reduced, 6, &[]).order(), 720);
    }

    #[test]
    fn symmetric_group_on_four_points_has_the_known_classes() {
        let group = PermGroup::from_generators("S4", 4, &symmetric_gens(4));
        assert_eq!(GroupOps::order(&group), 24);
        assert_eq!(group.num_classes(), 5);
        // Cycle types 1^4, 2^2, 2 1^2, 3 1, 4: within one element order the
        // smaller class sorts first, so the double transpositions precede
        // the transpositions.
        assert_eq!(group.sizes, vec![1, 3, 6, 8, 6]);
        assert_eq!(group.orders, vec![1, 2, 2, 3, 4]);
        assert_eq!(group.exponent(), 12);
        for class in 0..group.num_classes() {
            assert_eq!(group.class_members(class).len() as u64, group.class_size(class));
            let rep = group.class_rep(class);
            assert_eq!(group.class_of(&rep), class);
        }
    }

    #[test]
    fn relabelling_moved_points_shrinks_the_degree() {
        let g = Perm::from_cycles(7, &[&[2, 4, 6]]);
        let kept = vec![2u8, 4, 6];
        let small = g.relabel(&kept);
        assert_eq!(small.degree(), 3);
        assert_eq!(small.apply(0), 1);
        assert_eq!(small.apply(2), 0);
    }
}
