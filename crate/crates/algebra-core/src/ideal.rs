//! Reduction of cyclotomic integers modulo a maximal ideal containing 2.
//!
//! Fix an even integer `e = 2^a * m` with `m` odd (in practice the exponent
//! of a finite group).  In the residue field of any maximal ideal of
//! `Z[zeta_e]` over 2, every 2-power root of unity collapses to 1, while
//! `zeta_m` maps to a primitive `m`-th root of unity in `GF(2^d)` with
//! `d = ord_m(2)`.  Choosing the ideal amounts to choosing which primitive
//! `m`-th root receives `zeta_m`; the `phi(m)/d` Frobenius orbits of
//! primitive roots give the distinct ideals.
//!
//! Elements of `GF(2^d)` are packed into a `u64` bitmask (bit `i` is the
//! coefficient of `x^i` modulo a fixed irreducible polynomial).  Everything
//! is chosen deterministically: the modulus is the numerically least
//! irreducible mask of degree `d`, the generator is the least primitive
//! mask, and orbits are labelled by their least exponent and ordered by the
//! mask of their minimal polynomial.

use num_integer::Integer;

use crate::arith::{factor, gcd, mulmod, multiplicative_order, v2};
use crate::cyclotomic::CycInt;
use crate::AlgebraError;

/// Carry-less multiplication in `GF(2)[x]` followed by reduction modulo
/// `modulus` (degree `d`, bit `d` set).
fn gf2_mul(a: u64, b: u64, modulus: u64, d: u32) -> u64 {
    let mut prod: u128 = 0;
    let mut aa = a as u128;
    let mut bb = b;
    while bb != 0 {
        if bb & 1 == 1 {
            prod ^= aa;
        }
        aa <<= 1;
        bb >>= 1;
    }
    let md = modulus as u128;
    let mut bit = 2 * d as i32 - 2;
    while bit >= d as i32 {
        if (prod >> bit) & 1 == 1 {
            prod ^= md << (bit as u32 - d);
        }
        bit -= 1;
    }
    prod as u64
}

fn gf2_pow(base: u64, mut e: u64, modulus: u64, d: u32) -> u64 {
    let mut b = base;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = gf2_mul(acc, b, modulus, d);
        }
        e >>= 1;
        if e > 0 {
            b = gf2_mul(b, b, modulus, d);
        }
    }
    acc
}

/// Polynomial gcd in `GF(2)[x]` on bitmask representatives.
fn gf2_poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        if a != 0 {
            let db = 63 - b.leading_zeros();
            loop {
                if a == 0 {
                    break;
                }
                let da = 63 - a.leading_zeros();
                if da < db {
                    break;
                }
                a ^= b << (da - db);
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Whether the degree-`d` mask is irreducible over `GF(2)`
/// (Frobenius criterion: `x^(2^d) = x mod f` and, for every prime `r | d`,
/// `gcd(x^(2^(d/r)) - x, f) = 1`).
fn gf2_is_irreducible(f: u64, d: u32) -> bool {
    if d == 1 {
        return true;
    }
    if f & 1 == 0 {
        return false; // divisible by x
    }
    if f.count_ones() % 2 == 0 {
        return false; // divisible by x + 1
    }
    let x = 2u64;
    for (r, _) in factor(d as u64) {
        let mut t = x;
        for _ in 0..d as u64 / r {
            t = gf2_mul(t, t, f, d);
        }
        if gf2_poly_gcd(f, t ^ x) != 1 {
            return false;
        }
    }
    let mut t = x;
    for _ in 0..d {
        t = gf2_mul(t, t, f, d);
    }
    t == x
}

fn least_irreducible(d: u32) -> u64 {
    if d == 1 {
        return 0b10; // x itself
    }
    ((1u64 << d)..(1u64 << (d + 1)))
        .find(|&f| gf2_is_irreducible(f, d))
        .expect("an irreducible polynomial of every degree exists")
}

fn least_primitive(modulus: u64, d: u32) -> u64 {
    let order = (1u64 << d) - 1;
    if order == 1 {
        return 1;
    }
    let fac = factor(order);
    (2..(1u64 << d))
        .find(|&g| fac.iter().all(|&(r, _)| gf2_pow(g, order / r, modulus, d) != 1))
        .expect("GF(2^d) has a primitive element")
}

/// Minimal polynomial mask of `elt` over `GF(2)`: the product of
/// `x - elt^(2^i)` over the Frobenius orbit, whose coefficients land in
/// `GF(2)`.
fn minimal_polynomial_mask(elt: u64, modulus: u64, d: u32) -> u64 {
    let mut conjugates = Vec::new();
    let mut t = elt;
    loop {
        conjugates.push(t);
        t = gf2_mul(t, t, modulus, d);
        if t == elt {
            break;
        }
    }
    let mut poly: Vec<u64> = vec![1]; // the constant polynomial 1
    for c in conjugates {
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &co) in poly.iter().enumerate() {
            next[i + 1] ^= co;
            next[i] ^= gf2_mul(co, c, modulus, d);
        }
        poly = next;
    }
    let mut mask = 0u64;
    for (i, &co) in poly.iter().enumerate() {
        assert!(co <= 1, "minimal polynomial must have GF(2) coefficients");
        mask |= co << i;
    }
    mask
}

/// A fixed ring homomorphism `Z[zeta_e] -> GF(2^d)` with kernel a maximal
/// ideal over 2.
#[derive(Debug, Clone)]
pub struct IdealReduction {
    exponent: u64,
    m: u64,
    d: u32,
    modulus: u64,
    beta: u64,
    orbit: u64,
}

impl IdealReduction {
    /// The canonical choice of ideal over 2 for conductor `exponent`.
    pub fn new(exponent: u64) -> Self {
        Self::all_choices(exponent).into_iter().next().expect("at least one ideal")
    }

    /// One reduction per maximal ideal of `Z[zeta_exponent]` over 2
    /// (`phi(m)/ord_m(2)` of them), deterministically ordered.
    pub fn all_choices(exponent: u64) -> Vec<Self> {
        assert!(exponent >= 1);
        let m = exponent >> v2(exponent);
        if m == 1 {
            return vec![IdealReduction { exponent, m, d: 1, modulus: 0b10, beta: 1, orbit: 0 }];
        }
        let d = multiplicative_order(2, m) as u32;
        assert!(d <= 63, "residue degree too large to pack");
        let modulus = least_irreducible(d);
        let g = least_primitive(modulus, d);
        let beta_raw = gf2_pow(g, ((1u64 << d) - 1) / m, modulus, d);
        // Orbit representatives of <2> acting on (Z/m)^*, each labelled by
        // its least member.
        let mut reps: Vec<u64> = Vec::new();
        for u in 1..m {
            if gcd(u, m) != 1 {
                continue;
            }
            let mut t = u;
            let mut least = u;
            loop {
                t = mulmod(t, 2, m);
                if t == u {
                    break;
                }
                least = least.min(t);
            }
            if least == u {
                reps.push(u);
            }
        }
        let mut out: Vec<(u64, Self)> = reps
            .into_iter()
            .map(|u| {
                let beta = gf2_pow(beta_raw, u, modulus, d);
                let key = minimal_polynomial_mask(beta, modulus, d);
                (key, IdealReduction { exponent, m, d, modulus, beta, orbit: u })
            })
            .collect();
        out.sort_by_key(|(key, _)| *key);
        out.into_iter().map(|(_, r)| r).collect()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Residue degree `d` (the residue field is `GF(2^d)`).
    pub fn residue_degree(&self) -> u32 {
        self.d
    }

    /// Orbit label distinguishing this ideal from the other choices.
    pub fn orbit_label(&self) -> u64 {
        self.orbit
    }

    /// Multiplication in the residue field, exposed so callers can verify
    /// multiplicativity of the reduction.
    pub fn residue_mul(&self, a: u64, b: u64) -> u64 {
        gf2_mul(a, b, self.modulus, self.d)
    }

    /// Image of a cyclotomic integer in `GF(2^d)` as a packed bitmask.  The
    /// conductor of the value must divide the fixed exponent.
    pub fn reduce(&self, x: &CycInt) -> Result<u64, AlgebraError> {
        let n = x.conductor();
        if self.exponent % n != 0 {
            return Err(AlgebraError::ConductorMismatch { value: n, requested: self.exponent });
        }
        let comps = x.components();
        // Image of each tensor-basis root: zeta_{p^a} -> beta^(m/p^a) for
        // odd p, and 1 for p = 2.
        let tables: Vec<Option<Vec<u64>>> = comps
            .iter()
            .map(|&(p, a)| {
                if p == 2 {
                    None
                } else {
                    let pa = p.pow(a);
                    let g0 = gf2_pow(self.beta, self.m / pa, self.modulus, self.d);
                    let dim = pa / p * (p - 1);
                    Some((0..dim).map(|j| gf2_pow(g0, j, self.modulus, self.d)).collect())
                }
            })
            .collect();
        let mut acc = 0u64;
        for (idx, c) in x.coefficients().iter().enumerate() {
            if c.is_odd() {
                let exps = x.exponents_at(idx);
                let mut prod = 1u64;
                for (ci, t) in tables.iter().enumerate() {
                    if let Some(tab) = t {
                        prod = gf2_mul(prod, tab[exps[ci]], self.modulus, self.d);
                    }
                }
                acc ^= prod;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn gf2_primitives() {
        // x^2 + x + 1 is the least irreducible quadratic.
        assert_eq!(least_irreducible(2), 0b111);
        assert_eq!(least_irreducible(3), 0b1011); // x^3 + x + 1
        assert!(gf2_is_irreducible(0b1011, 3));
        assert!(!gf2_is_irreducible(0b1001, 3)); // x^3 + 1 = (x+1)(x^2+x+1)
        // In GF(4), x has order 3.
        assert_eq!(gf2_pow(2, 3, 0b111, 2), 1);
        assert_ne!(gf2_pow(2, 1, 0b111, 2), 1);
        assert_eq!(gf2_poly_gcd(0b1001, 0b111), 0b111);
    }

    #[test]
    fn reduction_for_exponent_twelve() {
        // e = 12: odd part 3, ord_3(2) = 2, so the residue field is GF(4).
        let choices = IdealReduction::all_choices(12);
        assert_eq!(choices.len(), 1);
        let red = &choices[0];
        assert_eq!(red.residue_degree(), 2);
        let z3 = CycInt::zeta(3, 1);
        let z4 = CycInt::zeta(4, 1);
        // zeta_3 maps to the generator x of GF(4); zeta_3^2 to x + 1.
        assert_eq!(red.reduce(&z3).unwrap(), 0b10);
        assert_eq!(red.reduce(&CycInt::zeta(3, 2)).unwrap(), 0b11);
        // 2-power roots of unity collapse to 1.
        assert_eq!(red.reduce(&z4).unwrap(), 1);
        assert_eq!(red.reduce(&CycInt::zeta(12, 1)).unwrap(), 0b10);
        // Even integers die, odd integers map to 1.
        assert_eq!(red.reduce(&CycInt::from_i64(6)).unwrap(), 0);
        assert_eq!(red.reduce(&CycInt::from_i64(-3)).unwrap(), 1);
        // Conductor must divide the exponent.
        assert!(red.reduce(&CycInt::zeta(5, 1)).is_err());
    }

    #[test]
    fn reduction_is_a_ring_homomorphism() {
        let mut rng = StdRng::seed_from_u64(20260814);
        for e in [12u64, 24, 120, 168, 840] {
            for red in IdealReduction::all_choices(e) {
                for _ in 0..40 {
                    let sample = |rng: &mut StdRng| {
                        let mut acc = CycInt::from_i64(rng.gen_range(-4i64..=4));
                        for _ in 0..3 {
                            let k = rng.gen_range(0..e);
                            let s = BigInt::from(rng.gen_range(-4i64..=4));
                            acc = acc.add(&CycInt::zeta(e, k).scale(&s));
                        }
                        acc
                    };
                    let x = sample(&mut rng);
                    let y = sample(&mut rng);
                    let rx = red.reduce(&x).unwrap();
                    let ry = red.reduce(&y).unwrap();
                    assert_eq!(red.reduce(&x.add(&y)).unwrap(), rx ^ ry);
                    assert_eq!(red.reduce(&x.mul(&y)).unwrap(), red.residue_mul(rx, ry));
                }
            }
        }
    }

    #[test]
    fn ideal_counts_match_orbit_theory() {
        // phi(m)/ord_m(2) ideals over 2.
        assert_eq!(IdealReduction::all_choices(8).len(), 1); // m = 1
        assert_eq!(IdealReduction::all_choices(24).len(), 1); // m = 3, d = 2
        assert_eq!(IdealReduction::all_choices(120).len(), 2); // m = 15, phi = 8, d = 4
        assert_eq!(IdealReduction::all_choices(168).len(), 2); // m = 21, phi = 12, d = 6
        let big = IdealReduction::all_choices(9240); // m = 1155, phi = 480, d = 60
        assert_eq!(big.len(), 8);
        assert!(big.iter().all(|r| r.residue_degree() == 60));
        // Distinct ideals really are distinct maps: some value separates
        // every pair.
        let z = CycInt::zeta(1155, 1);
        let images: Vec<u64> = big.iter().map(|r| r.reduce(&z).unwrap()).collect();
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                assert_ne!(images[i], images[j], "ideals {i} and {j} coincide on zeta");
            }
        }
    }

    #[test]
    fn choices_are_deterministic() {
        let a = IdealReduction::all_choices(840);
        let b = IdealReduction::all_choices(840);
        let (la, lb): (Vec<u64>, Vec<u64>) =
            (a.iter().map(|r| r.orbit_label()).collect(), b.iter().map(|r| r.orbit_label()).collect());
        assert_eq!(la, lb);
        let x = CycInt::zeta(105, 1).add(&CycInt::zeta(8, 3));
        for (ra, rb) in a.iter().zip(&b) {
            assert_eq!(ra.reduce(&x).unwrap(), rb.reduce(&x).unwrap());
        }
    }
}
