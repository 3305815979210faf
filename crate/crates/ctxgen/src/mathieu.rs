//! The two sporadic permutation groups needed for the bundled fixtures.
//!
//! The degree-24 group is generated over the projective line P1(23): the
//! affine shift, a multiplier, the inversion, and one extra permutation
//! acting by a cubing formula that differs on squares and non-squares.  The
//! exact constants in that formula vary between equivalent conventions, so
//! the constructor scans the small family of candidate constants and keeps
//! the one whose generated order matches 244 823 040 — the verified
//! stabilizer chain makes that check exact, not heuristic.  Its two-point
//! stabilizer is the degree-22 group of order 443 520.
//!
//! The degree-11 group comes from its classical pair of generators
//! (an 11-cycle and a double 4-cycle), again verified by order.

use crate::perm::{reduce_generators, Perm, PermGroup, StabChain};

const P: u8 = 23;
/// Index used for the point at infinity of P1(23).
const INF: u8 = 23;

pub const ORDER_M24: u128 = 244_823_040;
pub const ORDER_M23: u128 = 10_200_960;
pub const ORDER_M22: u128 = 443_520;
pub const ORDER_M11: u128 = 7_920;

fn nonzero_squares_mod_23() -> Vec<bool> {
    let mut square = vec![false; P as usize];
    for x in 1..P as u64 {
        square[(x * x % P as u64) as usize] = true;
    }
    square
}

/// x -> x + 1 on residues, fixing infinity.
fn shift() -> Perm {
    let mut images: Vec<u8> = (0..P).map(|x| (x + 1) % P).collect();
    images.push(INF);
    Perm::from_images(images)
}

/// x -> 2x on residues, fixing 0 and infinity.
fn multiplier() -> Perm {
    let mut images: Vec<u8> = (0..P).map(|x| (2 * x) % P).collect();
    images.push(INF);
    Perm::from_images(images)
}

/// x -> -1/x, swapping 0 and infinity.
fn inversion() -> Perm {
    let mut images = vec![0u8; P as usize + 1];
    images[0] = INF;
    images[INF as usize] = 0;
    for x in 1..P as u64 {
        let inv = algebra_core::arith::invmod(x, P as u64).expect("23 is prime");
        images[x as usize] = ((P as u64 - inv % P as u64) % P as u64) as u8;
    }
    Perm::from_images(images)
}

/// x -> c_sq * x^3 on non-zero squares and c_non * x^3 on non-squares,
/// fixing 0 and infinity.  Returns `None` when the map fails to be a
/// bijection (it never does for square constants, but the scan is generic).
fn cubing_map(c_sq: u64, c_non: u64) -> Option<Perm> {
    let square = nonzero_squares_mod_23();
    let mut images = vec![0u8; P as usize + 1];
    images[INF as usize] = INF;
    let mut hit = vec![false; P as usize + 1];
    hit[0] = true;
    hit[INF as usize] = true;
    for x in 1..P as u64 {
        let cube = x * x % P as u64 * x % P as u64;
        let c = if square[x as usize] { c_sq } else { c_non };
        let y = c * cube % P as u64;
        if hit[y as usize] {
            return None;
        }
        hit[y as usize] = true;
        images[x as usize] = y as u8;
    }
    Some(Perm::from_images(images))
}

/// Generators of the degree-24 group, found by scanning the candidate
/// constants of the cubing generator and verifying the generated order.
fn degree_24_generators() -> Vec<Perm> {
    let base = [shift(), multiplier(), inversion()];
    let nine_inv = algebra_core::arith::invmod(9, P as u64).expect("23 is prime");
    let candidates = [
        (nine_inv, 9),
        (9, nine_inv),
        (nine_inv, nine_inv),
        (9, 9),
        (1, 9),
        (9, 1),
        (1, nine_inv),
        (nine_inv, 1),
    ];
    for (c_sq, c_non) in candidates {
        let Some(delta) = cubing_map(c_sq, c_non) else {
            continue;
        };
        let mut gens = base.to_vec();
        gens.push(delta);
        if StabChain::build(&gens, 24, &[]).order() == ORDER_M24 {
            return gens;
        }
    }
    panic!("no cubing constant produced the degree-24 group");
}

/// The order-443520 two-point stabilizer of the degree-24 group, acting on
/// its 22 moved points, with a reduced and re-verified generating set.
pub fn mathieu_22() -> PermGroup {
    let gens = degree_24_generators();
    let chain = StabChain::build(&gens, 24, &[INF, 0]);
    assert_eq!(chain.order(), ORDER_M24);
    assert_eq!(
        StabChain::build(&chain.stabilizer_gens(1), 24, &[]).order(),
        ORDER_M23,
        "one-point stabilizer has the wrong order"
    );
    let stab_gens = chain.stabilizer_gens(2);
    let reduced = reduce_generators(&stab_gens, 24, ORDER_M22);

    // All generators fix 0 and infinity; relabel the other 22 points.
    let kept: Vec<u8> = (1..P).collect();
    let small: Vec<Perm> = reduced.iter().map(|g| g.relabel(&kept)).collect();
    let group = PermGroup::from_generators("M22", 22, &small);
    assert_eq!(chartab::GroupOps::order(&group) as u128, ORDER_M22);
    group
}

/// The order-7920 group from its classical generators on 11 points.
pub fn mathieu_11() -> PermGroup {
    let a = Perm::from_cycles(11, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]]);
    let b = Perm::from_cycles(11, &[&[2, 6, 10, 7], &[3, 9, 4, 5]]);
    let gens = vec![a, b];
    assert_eq!(StabChain::build(&gens, 11, &[]).order(), ORDER_M11);
    let group = PermGroup::from_generators("M11", 11, &gens);
    assert_eq!(chartab::GroupOps::order(&group) as u128, ORDER_M11);
    group
}

/// Orbit of a point under a generating set, for the transitivity checks in
/// the tests.
#[cfg(test)]
fn orbit_of(gens: &[Perm], point: u8) -> Vec<u8> {
    let mut orbit = vec![point];
    let mut seen = std::collections::HashSet::from([point]);
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let image = g.apply(orbit[i]);
            if seen.insert(image) {
                orbit.push(image);
            }
        }
        i += 1;
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use chartab::GroupOps;

    #[test]
    fn base_moebius_generators_give_psl_2_23() {
        let gens = vec![shift(), multiplier(), inversion()];
        assert_eq!(StabChain::build(&gens, 24, &[]).order(), 6072);
        assert_eq!(orbit_of(&gens, 0).len(), 24);
    }

    #[test]
    fn degree_24_construction_reaches_the_right_order() {
        let gens = degree_24_generators();
        assert_eq!(StabChain::build(&gens, 24, &[]).order(), ORDER_M24);
        assert_eq!(orbit_of(&gens, 0).len(), 24);
    }

    #[test]
    fn degree_11_group_has_the_known_class_data() {
        let group = mathieu_11();
        assert_eq!(GroupOps::order(&group), 7920);
        assert_eq!(group.num_classes(), 10);
        assert_eq!(group.exponent(), 1320);
        let mut orders: Vec<u64> = (0..10).map(|c| GroupOps::rep_order(&group, c)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 8, 8, 11, 11]);
    }
}
