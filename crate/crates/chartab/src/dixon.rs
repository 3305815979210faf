//! Exact table computation for enumerable groups.
//!
//! The vector of central-character values of an irreducible character is a
//! common eigenvector of all class-sum multiplication matrices.  Working
//! modulo a prime `P` chosen so that the cyclotomic field of the group
//! exponent reduces into `GF(P)` (that is `P = 1 mod exponent`) and so that
//! degrees are recoverable from their squares (`P > 2 * sqrt(order)`), the
//! algorithm:
//!
//! 1. splits the full coordinate space into common eigenspaces of the
//!    class-sum matrices, consuming the matrices lazily in ascending class
//!    size until every eigenspace is one-dimensional;
//! 2. normalises each eigenvector at the identity class, reads off the
//!    degree from the second orthogonality relation, and converts the
//!    eigenvector into character values modulo `P`;
//! 3. lifts every value exactly into cyclotomic integers by computing the
//!    multiplicity of each root of unity among the eigenvalues of the
//!    representing matrix, via the discrete Fourier sum over the power map
//!    of the class representative.
//!
//! The finished rows are handed to [`CharacterTable::from_parts`], whose
//! exact orthogonality verification doubles as a self-check of the whole
//! computation.

use std::sync::Arc;

use algebra_core::{arith, CycInt, FieldDescriptor, FieldElement, Matrix};
use group_engine::{GroupSpec, MatrixGroup, DEFAULT_ENUMERATION_CAP};
use num_bigint::BigInt;

use crate::ops::GroupOps;
use crate::table::{CharacterTable, TableParts, TableSource};
use crate::ChartabError;

/// Computes the character table of the group described by `spec`,
/// enumerating it first.  Groups whose order exceeds the enumeration cap
/// are reported as such without doing any work.
pub fn compute_table(spec: &GroupSpec) -> Result<CharacterTable, ChartabError> {
    let group = MatrixGroup::enumerate(spec, DEFAULT_ENUMERATION_CAP)?;
    compute_table_for(&group)
}

/// Computes the character table of an already materialised group.
pub fn compute_table_for<G: GroupOps>(group: &G) -> Result<CharacterTable, ChartabError> {
    let r = group.num_classes();
    let order = group.order();
    let sizes: Vec<u64> = (0..r).map(|i| group.class_size(i)).collect();
    let orders: Vec<u64> = (0..r).map(|i| group.rep_order(i)).collect();
    let power_classes: Vec<Vec<usize>> = (0..r).map(|i| group.power_classes(i)).collect();
    let inverse: Vec<usize> = (0..r)
        .map(|i| power_classes[i][orders[i] as usize - 1])
        .collect();
    let exponent = orders.iter().fold(1, |acc, &o| arith::lcm(acc, o));
    let p = dixon_prime(order, exponent);
    let fp = FieldDescriptor::get(p, 1)?;

    // Stage 1: refine the full space into common eigenspaces.  Smaller
    // classes give cheaper matrices and usually separate everything after a
    // couple of rounds, so the matrices are built on demand in size order.
    let mut subspaces = vec![full_space(&fp, r)];
    let mut by_size: Vec<usize> = (1..r).collect();
    by_size.sort_by_key(|&i| (sizes[i], i));
    for &i in &by_size {
        if subspaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let a = class_matrix(group, inverse[i], &fp);
        let mut refined = Vec::with_capacity(r);
        for sub in subspaces {
            if sub.dim() == 1 {
                refined.push(sub);
            } else {
                refined.extend(split_subspace(sub, &a, &fp)?);
            }
        }
        subspaces = refined;
    }
    if subspaces.len() != r {
        return Err(internal(format!(
            "class matrices separated {} of {} eigenvectors",
            subspaces.len(),
            r
        )));
    }

    // Stage 2 and 3: turn each eigenvector into an exact character row.
    let size_inv: Vec<u64> = sizes
        .iter()
        .map(|&s| arith::invmod(s % p, p).expect("class sizes divide the order, p does not"))
        .collect();
    let root = arith::least_primitive_root(p);
    let mut rows = Vec::with_capacity(r);
    for sub in &subspaces {
        let w = normalised_eigenvector(sub)?;
        let degree = recover_degree(&w, &sizes, &size_inv, &inverse, order, p)?;
        // Character values modulo p: x_k = degree * w_k / |K_k|.
        let values_mod_p: Vec<u64> = (0..r)
            .map(|k| arith::mulmod(degree, arith::mulmod(w[k], size_inv[k], p), p))
            .collect();
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            row.push(lift_value(
                &values_mod_p,
                &power_classes[k],
                orders[k],
                degree,
                root,
                p,
            )?);
        }
        rows.push(row);
    }

    CharacterTable::from_parts(
        TableParts {
            label: group.label(),
            order,
            exponent,
            class_sizes: sizes,
            class_orders: orders,
            inverse_classes: inverse,
            rows,
        },
        TableSource::Computed,
    )
}

/// The least prime `p = 1 (mod exponent)` with `p > 2 * sqrt(order)`.
/// Every prime divisor of the order divides the exponent, so `p` never
/// divides the order, and the bound makes degrees unique below `p / 2`.
pub fn dixon_prime(order: u64, exponent: u64) -> u64 {
    let bound = integer_sqrt(4 * order) + 1;
    let e = exponent.max(1);
    let steps = (bound.saturating_sub(2)) / e;
    let mut p = steps * e + 1;
    loop {
        p += e;
        if arith::is_prime(p) {
            return p;
        }
    }
}

fn integer_sqrt(n: u64) -> u64 {
    let mut s = (n as f64).sqrt() as u64;
    while s > 0 && s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

fn internal(message: String) -> ChartabError {
    ChartabError::Internal { message }
}

/// An invariant subspace with a reduced (pivot-normalised) basis, so that
/// coordinates of member vectors can be read off at the pivot positions.
struct Subspace {
    basis: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn full_space(fp: &Arc<FieldDescriptor>, r: usize) -> Subspace {
    let basis = (0..r)
        .map(|t| {
            let mut v = vec![fp.zero(); r];
            v[t] = fp.one();
            v
        })
        .collect();
    Subspace {
        basis,
        pivots: (0..r).collect(),
    }
}

/// Reduces a spanning set to a pivot-normalised basis.
fn reduce_basis(vecs: Vec<Vec<FieldElement>>) -> Subspace {
    let mut basis: Vec<Vec<FieldElement>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut v in vecs {
        for (b, &piv) in basis.iter().zip(&pivots) {
            let c = v[piv].clone();
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.sub(&c.mul(y));
                }
            }
        }
        if let Some(piv) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[piv].inverse().expect("nonzero field element");
            for x in v.iter_mut() {
                *x = x.mul(&inv);
            }
            for b in basis.iter_mut() {
                let c = b[piv].clone();
                if !c.is_zero() {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = x.sub(&c.mul(y));
                    }
                }
            }
            basis.push(v);
            pivots.push(piv);
        }
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&t| pivots[t]);
    let sub = Subspace {
        basis: order.iter().map(|&t| basis[t].clone()).collect(),
        pivots: order.iter().map(|&t| pivots[t]).collect(),
    };
    debug_assert!(sub.basis.iter().enumerate().all(|(i, b)| {
        b[sub.pivots[i]].is_one()
            && sub
                .pivots
                .iter()
                .enumerate()
                .all(|(j, &pv)| j == i || b[pv].is_zero())
    }));
    sub
}

/// Builds the class-sum multiplication matrix of a class over `GF(p)`:
/// entry `(j, k)` counts the pairs `(x, y)` in `K_i x K_j` with `x y = z_k`
/// for the fixed representative `z_k`.  The count runs over `u = x^{-1}` in
/// the inverse class `inv_class`, tallying the class of `u * z_k`.
fn class_matrix<G: GroupOps>(
    group: &G,
    inv_class: usize,
    fp: &Arc<FieldDescriptor>,
) -> Matrix {
    let r = group.num_classes();
    let reps: Vec<G::El> = (0..r).map(|k| group.class_rep(k)).collect();
    let mut counts = vec![vec![0u64; r]; r];
    for u in group.class_members(inv_class) {
        for (k, z) in reps.iter().enumerate() {
            let j = group.class_of(&group.mul(&u, z));
            counts[j][k] += 1;
        }
    }
    let p = fp.characteristic();
    let rows: Vec<Vec<FieldElement>> = counts
        .into_iter()
        .map(|row| row.into_iter().map(|c| fp.from_u64(c % p)).collect())
        .collect();
    Matrix::from_rows(fp, &rows)
}

/// Splits an invariant subspace into the eigenspaces of `a` restricted to
/// it.  The restriction is diagonalisable because the subspace is spanned
/// by common eigenvectors, so the eigenspace dimensions must fill it.
fn split_subspace(
    sub: Subspace,
    a: &Matrix,
    fp: &Arc<FieldDescriptor>,
) -> Result<Vec<Subspace>, ChartabError> {
    let d = sub.dim();
    let images: Vec<Vec<FieldElement>> = sub.basis.iter().map(|b| a.mul_vec(b)).collect();
    let mut m_rows = vec![vec![fp.zero(); d]; d];
    for (col, image) in images.iter().enumerate() {
        for (row, &piv) in sub.pivots.iter().enumerate() {
            m_rows[row][col] = image[piv].clone();
        }
    }
    let m = Matrix::from_rows(fp, &m_rows);
    let roots = m.charpoly().roots()?;
    if roots.len() == 1 {
        return Ok(vec![sub]);
    }
    let identity = Matrix::identity(fp, d);
    let mut parts = Vec::with_capacity(roots.len());
    let mut total = 0;
    for (lambda, _) in roots {
        let kernel = m.sub(&identity.scale(&lambda)).kernel();
        let vecs: Vec<Vec<FieldElement>> = kernel
            .iter()
            .map(|coords| {
                let mut v = vec![fp.zero(); sub.basis[0].len()];
                for (c, b) in coords.iter().zip(&sub.basis) {
                    if !c.is_zero() {
                        for (x, y) in v.iter_mut().zip(b) {
                            *x = x.add(&c.mul(y));
                        }
                    }
                }
                v
            })
            .collect();
        let piece = reduce_basis(vecs);
        total += piece.dim();
        parts.push(piece);
    }
    if total != d {
        return Err(internal(
            "eigenspaces of a class matrix do not fill an invariant subspace".into(),
        ));
    }
    Ok(parts)
}

/// Scales the single basis vector of a one-dimensional eigenspace so that
/// its coordinate at the identity class equals one, and returns it as raw
/// residues.
fn normalised_eigenvector(sub: &Subspace) -> Result<Vec<u64>, ChartabError> {
    let w = &sub.basis[0];
    let head = w[0].clone();
    if head.is_zero() {
        return Err(internal(
            "eigenvector vanishes at the identity class".into(),
        ));
    }
    let scale = head.inverse().map_err(ChartabError::Algebra)?;
    Ok(w.iter().map(|x| x.mul(&scale).coeffs()[0]).collect())
}

/// Reads the character degree off the second orthogonality relation:
/// `degree^2 = order / sum_j w_j * w_{j*} / |K_j|` modulo `p`, where `j*`
/// is the inverse class.  The prime bound guarantees a unique square root
/// below `p / 2`.
fn recover_degree(
    w: &[u64],
    sizes: &[u64],
    size_inv: &[u64],
    inverse: &[usize],
    order: u64,
    p: u64,
) -> Result<u64, ChartabError> {
    let mut s = 0u64;
    for j in 0..sizes.len() {
        let term = arith::mulmod(arith::mulmod(w[j], w[inverse[j]], p), size_inv[j], p);
        s = arith::addmod(s, term, p);
    }
    let s_inv = arith::invmod(s, p)
        .ok_or_else(|| internal("norm of a central character vanished".into()))?;
    let target = arith::mulmod(order % p, s_inv, p);
    for d in 1..=(p - 1) / 2 {
        if arith::mulmod(d, d, p) == target {
            return Ok(d);
        }
    }
    Err(internal("no degree below p/2 matches its square".into()))
}

/// Lifts one character value exactly: the value on a class with
/// representative `g` of order `o` is `sum_u m_u zeta_o^u`, where `m_u` is
/// the multiplicity of the `u`-th power of the fixed root of unity among
/// the eigenvalues of the representing matrix, recovered by the inverse
/// Fourier sum `m_u = (1/o) sum_l x(g^l) z^{-ul}` over `GF(p)`.
fn lift_value(
    values_mod_p: &[u64],
    power_classes: &[usize],
    o: u64,
    degree: u64,
    root: u64,
    p: u64,
) -> Result<CycInt, ChartabError> {
    if o == 1 {
        return Ok(CycInt::from_bigint(BigInt::from(degree)));
    }
    let z = arith::powmod(root, (p - 1) / o, p);
    let z_inv = arith::invmod(z, p).expect("roots of unity are invertible");
    let o_inv = arith::invmod(o % p, p).expect("o < p is invertible");
    let mut z_pow = vec![1u64; o as usize];
    for t in 1..o as usize {
        z_pow[t] = arith::mulmod(z_pow[t - 1], z_inv, p);
    }
    let mut value = CycInt::zero();
    let mut mult_sum = 0u64;
    for u in 0..o {
        let mut acc = 0u64;
        for (l, &cls) in power_classes.iter().enumerate() {
            let idx = (u as usize * l) % o as usize;
            acc = arith::addmod(acc, arith::mulmod(values_mod_p[cls], z_pow[idx], p), p);
        }
        let mu = arith::mulmod(o_inv, acc, p);
        mult_sum += mu;
        if mu != 0 {
            value = value.add(&CycInt::zeta(o, u).scale(&BigInt::from(mu)));
        }
    }
    if mult_sum != degree {
        return Err(internal(format!(
            "eigenvalue multiplicities sum to {mult_sum}, degree is {degree}"
        )));
    }
    Ok(value)
}
