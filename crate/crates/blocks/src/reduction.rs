//! Reduction of cyclotomic integers modulo a maximal ideal above a prime.
//!
//! For `l = 2` — the focus of the whole artifact — this wraps the packed
//! residue-field reduction from `algebra-core`, which handles the large
//! residue degrees of the bundled sporadic-group tables.  For odd `l` the
//! same construction is realised on the generic finite-field machinery:
//! with `e = l^a * m` and `l` not dividing `m`, the residue field is
//! `GF(l^d)` with `d = ord_m(l)`; roots of unity of `l`-power order
//! collapse to 1 and `zeta_m` maps to a fixed primitive `m`-th root.
//! Distinct maximal ideals correspond to the orbits of multiplication by
//! `l` on the primitive residues mod `m`, so every choice is enumerable
//! and the block partition can be checked not to depend on it.

use std::sync::Arc;

use algebra_core::{arith, CycInt, FieldDescriptor, FieldElement, IdealReduction};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::BlocksError;

/// A fixed ring homomorphism from the cyclotomic integers of a conductor
/// into a finite residue field, with kernel a maximal ideal above an odd
/// prime.
#[derive(Debug, Clone)]
pub struct OddIdealReduction {
    ell: u64,
    exponent: u64,
    /// Prime-to-`ell` part of the exponent.
    m: u64,
    field: Arc<FieldDescriptor>,
    /// Image of `zeta_m`: a primitive `m`-th root of unity.
    beta: FieldElement,
    orbit: u64,
}

impl OddIdealReduction {
    /// The canonical ideal choice for an odd prime.
    pub fn new(ell: u64, exponent: u64) -> Result<Self, BlocksError> {
        Ok(Self::all_choices(ell, exponent)?
            .into_iter()
            .next()
            .expect("at least one ideal above every prime"))
    }

    /// One reduction per maximal ideal above `ell`, ordered by the least
    /// member of the corresponding orbit of residues.
    pub fn all_choices(ell: u64, exponent: u64) -> Result<Vec<Self>, BlocksError> {
        if ell < 3 || !arith::is_prime(ell) {
            return Err(BlocksError::Unsupported {
                message: format!("{ell} is not an odd prime"),
            });
        }
        let mut m = exponent.max(1);
        while m % ell == 0 {
            m /= ell;
        }
        let d = if m == 1 { 1 } else { arith::multiplicative_order(ell, m) as u32 };
        let field = FieldDescriptor::get(ell, d).map_err(BlocksError::Algebra)?;
        let beta = if m == 1 {
            field.one()
        } else {
            field.primitive_root_of_unity(m).map_err(BlocksError::Algebra)?
        };
        // Orbit representatives of multiplication by `ell` on the primitive
        // residues mod m, each labelled by its least member.
        let mut reps = Vec::new();
        for u in 1..=m {
            if u < m && arith::gcd(u, m) != 1 {
                continue;
            }
            if u == m && m > 1 {
                continue;
            }
            let mut t = u;
            let mut least = u;
            loop {
                t = arith::mulmod(t, ell, m.max(2));
                if t == u {
                    break;
                }
                least = least.min(t);
            }
            if least == u {
                reps.push(u);
            }
        }
        Ok(reps
            .into_iter()
            .map(|u| OddIdealReduction {
                ell,
                exponent,
                m,
                field: field.clone(),
                beta: beta.pow(u),
                orbit: u,
            })
            .collect())
    }

    /// The prime under the ideal.
    pub fn prime(&self) -> u64 {
        self.ell
    }

    /// Orbit label distinguishing this ideal from the other choices.
    pub fn orbit_label(&self) -> u64 {
        self.orbit
    }

    /// Image of a cyclotomic integer, packed into a `u64` by base-`ell`
    /// digits of the residue-field coordinates.
    pub fn reduce(&self, x: &CycInt) -> Result<u64, BlocksError> {
        let n = x.conductor();
        if self.exponent.max(1) % n != 0 {
            return Err(BlocksError::Unsupported {
                message: format!(
                    "value of conductor {n} under an ideal fixed for exponent {}",
                    self.exponent
                ),
            });
        }
        let comps = x.components();
        // Image of each tensor-basis root: zeta_{p^a} -> beta^(m/p^a) for
        // p != ell, and 1 for p = ell.
        let tables: Vec<Option<Vec<FieldElement>>> = comps
            .iter()
            .map(|&(p, a)| {
                if p == self.ell {
                    None
                } else {
                    let pa = p.pow(a);
                    let g0 = self.beta.pow(self.m / pa);
                    let dim = (pa / p * (p - 1)) as usize;
                    let mut powers = Vec::with_capacity(dim);
                    let mut acc = self.field.one();
                    for _ in 0..dim {
                        powers.push(acc.clone());
                        acc = acc.mul(&g0);
                    }
                    Some(powers)
                }
            })
            .collect();
        let ell_big = BigInt::from(self.ell);
        let mut total = self.field.zero();
        for (idx, c) in x.coefficients().iter().enumerate() {
            let residue = ((c % &ell_big) + &ell_big) % &ell_big;
            let residue = residue.to_u64().expect("residue below ell");
            if residue == 0 {
                continue;
            }
            let exps = x.exponents_at(idx);
            let mut term = self.field.from_u64(residue);
            for (ci, table) in tables.iter().enumerate() {
                if let Some(powers) = table {
                    term = term.mul(&powers[exps[ci]]);
                }
            }
            total = total.add(&term);
        }
        Ok(pack(&total, self.ell))
    }
}

fn pack(x: &FieldElement, ell: u64) -> u64 {
    x.coeffs().iter().rev().fold(0u64, |acc, &c| acc * ell + c)
}

/// Reduction modulo a maximal ideal above a prime `l`, dispatching between
/// the packed implementation for `l = 2` and the generic one for odd `l`.
#[derive(Debug, Clone)]
pub enum ClassReduction {
    Two(IdealReduction),
    Odd(OddIdealReduction),
}

impl ClassReduction {
    /// The canonical ideal choice above `ell` for the given exponent.
    pub fn new(ell: u64, exponent: u64) -> Result<Self, BlocksError> {
        if ell == 2 {
            Ok(ClassReduction::Two(IdealReduction::new(exponent)))
        } else {
            Ok(ClassReduction::Odd(OddIdealReduction::new(ell, exponent)?))
        }
    }

    /// Every ideal choice above `ell`, deterministically ordered.
    pub fn all_choices(ell: u64, exponent: u64) -> Result<Vec<Self>, BlocksError> {
        if ell == 2 {
            Ok(IdealReduction::all_choices(exponent)
                .into_iter()
                .map(ClassReduction::Two)
                .collect())
        } else {
            Ok(OddIdealReduction::all_choices(ell, exponent)?
                .into_iter()
                .map(ClassReduction::Odd)
                .collect())
        }
    }

    /// The prime under the ideal.
    pub fn prime(&self) -> u64 {
        match self {
            ClassReduction::Two(_) => 2,
            ClassReduction::Odd(r) => r.prime(),
        }
    }

    /// Packed image of a cyclotomic integer in the residue field.
    pub fn reduce(&self, x: &CycInt) -> Result<u64, BlocksError> {
        match self {
            ClassReduction::Two(r) => r.reduce(x).map_err(BlocksError::Algebra),
            ClassReduction::Odd(r) => r.reduce(x),
        }
    }
}
