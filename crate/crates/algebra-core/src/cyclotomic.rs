//! Exact arithmetic in rings of cyclotomic integers.
//!
//! An element of `Z[zeta_n]` is stored on the tensor basis: writing the
//! conductor as `n = prod_p p^(a_p)`, the basis elements are the products
//! `prod_p zeta_{p^(a_p)}^(j_p)` with `0 <= j_p < phi(p^(a_p))`.  This is a
//! `Z`-basis, products of basis elements expand with a single relation per
//! prime power (`zeta^phi = -sum of lower powers in a coset`), and the
//! conductor of a value can be read off by inspecting which coordinates are
//! occupied.  Values are kept normalized: the stored conductor is always the
//! minimal one (and never twice an odd number, since `zeta_{2m} = -zeta_m^u`
//! for odd `m`).
//!
//! Coefficients are arbitrary-precision integers, so every operation is
//! exact; division is only permitted when it is exact and fails loudly
//! otherwise.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{euler_phi, factor, gcd, invmod, mulmod};
use crate::AlgebraError;

fn phi_pp(p: u64, a: u32) -> u64 {
    p.pow(a - 1) * (p - 1)
}

/// Expansion of `zeta_{p^a}^e` (any `e >= 0`) on the basis
/// `zeta_{p^a}^j, 0 <= j < phi(p^a)`: either a single basis element or, when
/// the reduced exponent lands in the top coset, `p - 1` elements with sign
/// `-1`.
fn expand(p: u64, a: u32, e: u64) -> Vec<(usize, i64)> {
    let pa = p.pow(a);
    let phi = phi_pp(p, a);
    let e = e % pa;
    if e < phi {
        vec![(e as usize, 1)]
    } else {
        let r = e - phi; // r < p^(a-1) because e < p^a
        let step = pa / p;
        (0..p - 1).map(|t| ((t * step + r) as usize, -1)).collect()
    }
}

fn merge_comps(a: &[(u64, u32)], b: &[(u64, u32)]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1.max(b[j].1)));
            i += 1;
            j += 1;
        }
    }
    out
}

fn encode(dims: &[usize], exps: &[usize]) -> usize {
    exps.iter().zip(dims).fold(0, |acc, (&j, &d)| acc * d + j)
}

/// A cyclotomic integer, kept in normalized (minimal-conductor) form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    n: u64,
    comps: Vec<(u64, u32)>,
    dims: Vec<usize>,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn from_bigint(v: BigInt) -> Self {
        CycInt { n: 1, comps: Vec::new(), dims: Vec::new(), coeffs: vec![v] }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    /// The root of unity `zeta_n^k` (with `zeta_n = e^(2 pi i / n)`).
    pub fn zeta(n: u64, k: u64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let k = k % n;
        let g = gcd(n, k);
        let (n1, k1) = (n / g, if k == 0 { 0 } else { k / g });
        let comps = factor(n1);
        // Split the exponent across prime powers: zeta_{n1} is the product
        // of zeta_{p^a}^(c_p) with c_p = (n1/p^a)^(-1) mod p^a.
        let mut per_comp: Vec<Vec<(usize, i64)>> = Vec::with_capacity(comps.len());
        for &(p, a) in &comps {
            let pa = p.pow(a);
            let c = invmod((n1 / pa) % pa, pa).expect("coprime cofactor");
            let j = mulmod(k1 % pa, c, pa);
            per_comp.push(expand(p, a, j));
        }
        let dims: Vec<usize> = comps.iter().map(|&(p, a)| phi_pp(p, a) as usize).collect();
        let mut coeffs = vec![BigInt::zero(); dims.iter().product()];
        let mut acc: Vec<(usize, i64)> = vec![(0, 1)];
        for (ci, terms) in per_comp.iter().enumerate() {
            let mut next = Vec::with_capacity(acc.len() * terms.len());
            for &(idx, s) in &acc {
                for &(j, t) in terms {
                    next.push((idx * dims[ci] + j, s * t));
                }
            }
            acc = next;
        }
        for (idx, s) in acc {
            coeffs[idx] += BigInt::from(s);
        }
        Self::assemble(comps, coeffs)
    }

    fn assemble(comps: Vec<(u64, u32)>, coeffs: Vec<BigInt>) -> Self {
        let dims: Vec<usize> = comps.iter().map(|&(p, a)| phi_pp(p, a) as usize).collect();
        debug_assert_eq!(coeffs.len(), dims.iter().product::<usize>());
        let n = comps.iter().map(|&(p, a)| p.pow(a)).product::<u64>();
        let mut out = CycInt { n, comps, dims, coeffs };
        out.normalize();
        out
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn components(&self) -> &[(u64, u32)] {
        &self.comps
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Per-component basis exponents of the flat coefficient index `idx`.
    pub fn exponents_at(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0usize; self.comps.len()];
        for c in (0..self.comps.len()).rev() {
            out[c] = idx % self.dims[c];
            idx /= self.dims[c];
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn as_bigint(&self) -> Option<BigInt> {
        if self.n == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the coefficients on the tensor basis of a larger
    /// conductor whose prime-power components are `comps` (a superset of
    /// this value's components).
    fn lifted_dense(&self, comps: &[(u64, u32)]) -> Vec<BigInt> {
        let dims: Vec<usize> = comps.iter().map(|&(p, a)| phi_pp(p, a) as usize).collect();
        let mut out = vec![BigInt::zero(); dims.iter().product()];
        let pos: Vec<usize> = self
            .comps
            .iter()
            .map(|(p, _)| comps.iter().position(|(q, _)| q == p).expect("component missing in lift"))
            .collect();
        let scale: Vec<usize> = self
            .comps
            .iter()
            .enumerate()
            .map(|(ci, &(p, a))| {
                let big_a = comps[pos[ci]].1;
                assert!(big_a >= a, "lift must not lower a component");
                p.pow(big_a - a) as usize
            })
            .collect();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exps = self.exponents_at(idx);
            let mut tex = vec![0usize; comps.len()];
            for (ci, &j) in exps.iter().enumerate() {
                tex[pos[ci]] = j * scale[ci];
            }
            out[encode(&dims, &tex)] += c;
        }
        out
    }

    /// Nonzero terms as (per-component exponents on `comps`, coefficient).
    fn lifted_terms(&self, comps: &[(u64, u32)]) -> Vec<(Vec<u64>, BigInt)> {
        let pos: Vec<usize> = self
            .comps
            .iter()
            .map(|(p, _)| comps.iter().position(|(q, _)| q == p).expect("component missing in lift"))
            .collect();
        let scale: Vec<u64> = self
            .comps
            .iter()
            .enumerate()
            .map(|(ci, &(p, a))| p.pow(comps[pos[ci]].1 - a))
            .collect();
        let mut out = Vec::new();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exps = self.exponents_at(idx);
            let mut tex = vec![0u64; comps.len()];
            for (ci, &j) in exps.iter().enumerate() {
                tex[pos[ci]] = j as u64 * scale[ci];
            }
            out.push((tex, c.clone()));
        }
        out
    }

    /// Restores the normalization invariant: strips prime-power components
    /// that the coefficients show to be unused, lowering the conductor to
    /// the minimal one.
    fn normalize(&mut self) {
        loop {
            let mut acted = false;
            for ci in 0..self.comps.len() {
                let (p, a) = self.comps[ci];
                if a >= 2 {
                    let reducible = self.coeffs.iter().enumerate().all(|(idx, c)| {
                        c.is_zero() || self.exponents_at(idx)[ci] % p as usize == 0
                    });
                    if reducible {
                        self.rebuild(ci, Some((p, a - 1)));
                        acted = true;
                        break;
                    }
                } else {
                    let droppable = self.dims[ci] == 1
                        || self.coeffs.iter().enumerate().all(|(idx, c)| {
                            c.is_zero() || self.exponents_at(idx)[ci] == 0
                        });
                    if droppable {
                        self.rebuild(ci, None);
                        acted = true;
                        break;
                    }
                }
            }
            if !acted {
                break;
            }
        }
        self.n = self.comps.iter().map(|&(p, a)| p.pow(a)).product::<u64>();
        if self.coeffs.is_empty() {
            self.coeffs.push(BigInt::zero());
        }
    }

    /// Replaces component `ci` by `new_level` (exponents divided by `p`) or
    /// removes it (`None`; only exponent-zero coordinates survive).
    fn rebuild(&mut self, ci: usize, new_level: Option<(u64, u32)>) {
        let p = self.comps[ci].0;
        let mut comps = self.comps.clone();
        match new_level {
            Some(lvl) => comps[ci] = lvl,
            None => {
                comps.remove(ci);
            }
        }
        let dims: Vec<usize> = comps.iter().map(|&(q, b)| phi_pp(q, b) as usize).collect();
        let mut coeffs = vec![BigInt::zero(); dims.iter().product()];
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = self.exponents_at(idx);
            match new_level {
                Some(_) => exps[ci] /= p as usize,
                None => {
                    debug_assert_eq!(exps[ci], 0);
                    exps.remove(ci);
                }
            }
            coeffs[encode(&dims, &exps)] += c;
        }
        self.comps = comps;
        self.dims = dims;
        self.coeffs = coeffs;
    }

    pub fn add(&self, other: &Self) -> Self {
        let comps = merge_comps(&self.comps, &other.comps);
        let mut coeffs = self.lifted_dense(&comps);
        for (slot, c) in coeffs.iter_mut().zip(other.lifted_dense(&comps)) {
            *slot += c;
        }
        Self::assemble(comps, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -std::mem::take(c);
        }
        out
    }

    pub fn scale(&self, v: &BigInt) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = std::mem::take(c) * v;
        }
        out.normalize();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let comps = merge_comps(&self.comps, &other.comps);
        let dims: Vec<usize> = comps.iter().map(|&(p, a)| phi_pp(p, a) as usize).collect();
        let mut coeffs = vec![BigInt::zero(); dims.iter().product()];
        let a_terms = self.lifted_terms(&comps);
        let b_terms = other.lifted_terms(&comps);
        for (ea, ca) in &a_terms {
            for (eb, cb) in &b_terms {
                let prod = ca * cb;
                let mut acc: Vec<(usize, i64)> = vec![(0, 1)];
                for (ci, &(p, a)) in comps.iter().enumerate() {
                    let terms = expand(p, a, ea[ci] + eb[ci]);
                    let mut next = Vec::with_capacity(acc.len() * terms.len());
                    for &(idx, s) in &acc {
                        for &(j, t) in &terms {
                            next.push((idx * dims[ci] + j, s * t));
                        }
                    }
                    acc = next;
                }
                for (idx, s) in acc {
                    if s > 0 {
                        coeffs[idx] += &prod;
                    } else {
                        coeffs[idx] -= &prod;
                    }
                }
            }
        }
        Self::assemble(comps, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The Galois twist `zeta_n -> zeta_n^u`; `u` must be coprime to the
    /// conductor.
    pub fn galois(&self, u: u64) -> Result<Self, AlgebraError> {
        if gcd(u % self.n, self.n) != 1 {
            return Err(AlgebraError::NotCoprime { u, n: self.n });
        }
        let comps = self.comps.clone();
        let dims = self.dims.clone();
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len()];
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exps = self.exponents_at(idx);
            let mut acc: Vec<(usize, i64)> = vec![(0, 1)];
            for (ci, &(p, a)) in comps.iter().enumerate() {
                let pa = p.pow(a);
                let terms = expand(p, a, mulmod(exps[ci] as u64, u % pa, pa));
                let mut next = Vec::with_capacity(acc.len() * terms.len());
                for &(i0, s) in &acc {
                    for &(j, t) in &terms {
                        next.push((i0 * dims[ci] + j, s * t));
                    }
                }
                acc = next;
            }
            for (i0, s) in acc {
                if s > 0 {
                    coeffs[i0] += c;
                } else {
                    coeffs[i0] -= c;
                }
            }
        }
        Ok(Self::assemble(comps, coeffs))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        if self.n == 1 {
            self.clone()
        } else {
            self.galois(self.n - 1).expect("n-1 is coprime to n")
        }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Exact division by a rational integer; errors if any coordinate is not
    /// divisible.
    pub fn divide_exact(&self, d: &BigInt) -> Result<Self, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut out = self.clone();
        for c in &mut out.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(AlgebraError::NotIntegral {
                    what: format!("{} / {}", self, d),
                });
            }
            *c = q;
        }
        Ok(out)
    }

    /// Coefficients of this value on the power basis
    /// `1, zeta_m, ..., zeta_m^(phi(m)-1)`; `m` must be a multiple of the
    /// conductor.
    pub fn to_power_basis(&self, m: u64) -> Result<Vec<BigInt>, AlgebraError> {
        if m == 0 || m % self.n != 0 {
            return Err(AlgebraError::ConductorMismatch { value: self.n, requested: m });
        }
        let s = euler_phi(m) as usize;
        let m_norm = if m % 4 == 2 { m / 2 } else { m };
        let comps = factor(m_norm);
        // Columns: tensor coordinates of the power-basis elements.
        let mut mat: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); s]; s];
        for i in 0..s {
            let col = Self::zeta(m, i as u64).lifted_dense(&comps);
            debug_assert_eq!(col.len(), s);
            for (r, v) in col.into_iter().enumerate() {
                mat[r][i] = v;
            }
        }
        let rhs = self.lifted_dense(&comps);
        bareiss_solve(mat, rhs)
    }

    /// Builds the value `sum_i coeffs[i] * zeta_n^i`; `coeffs` must have
    /// exactly `phi(n)` entries.
    pub fn from_power_basis(n: u64, coeffs: &[BigInt]) -> Result<Self, AlgebraError> {
        if n == 0 || coeffs.len() != euler_phi(n) as usize {
            return Err(AlgebraError::BadCoefficients {
                what: format!("power basis for conductor {n} needs phi(n) coefficients"),
            });
        }
        let mut acc = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Self::zeta(n, i as u64).scale(c));
            }
        }
        Ok(acc)
    }
}

/// Solves `M x = rhs` exactly over the integers by fraction-free
/// (Bareiss) elimination; the caller guarantees an integral solution exists.
fn bareiss_solve(mut m: Vec<Vec<BigInt>>, mut rhs: Vec<BigInt>) -> Result<Vec<BigInt>, AlgebraError> {
    let n = rhs.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        let piv = (k..n)
            .find(|&r| !m[r][k].is_zero())
            .ok_or(AlgebraError::SingularMatrix)?;
        if piv != k {
            m.swap(piv, k);
            rhs.swap(piv, k);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(num, &prev)?;
            }
            let num = &m[k][k] * &rhs[i] - &m[i][k] * &rhs[k];
            rhs[i] = exact_div(num, &prev)?;
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigInt::zero(); n];
    for k in (0..n).rev() {
        let mut acc = rhs[k].clone();
        for j in k + 1..n {
            acc -= &m[k][j] * &x[j];
        }
        x[k] = exact_div(acc, &m[k][k])?;
    }
    Ok(x)
}

fn exact_div(num: BigInt, den: &BigInt) -> Result<BigInt, AlgebraError> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(AlgebraError::NotIntegral { what: format!("{num} / {den}") })
    }
}

impl fmt::Display for CycInt {
    /// Renders as a plain integer when rational, otherwise as
    /// `c(n:a0,a1,...)` with the coefficients on the power basis of the
    /// minimal conductor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_bigint() {
            Some(v) => write!(f, "{v}"),
            None => {
                let pc = self
                    .to_power_basis(self.n)
                    .expect("power basis at own conductor always exists");
                let body: Vec<String> = pc.iter().map(ToString::to_string).collect();
                write!(f, "c({}:{})", self.n, body.join(","))
            }
        }
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[n={}; ", self.n)?;
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*B{:?}", c, self.exponents_at(idx))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "]")
    }
}

impl PartialOrd for CycInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycInt {
    /// Structural order: by conductor, then lexicographically by tensor
    /// coordinates.  Total, deterministic, and independent of how the value
    /// was produced (representations are unique).
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Reference implementation used to cross-check [`CycInt`]: values are dense
/// coefficient vectors in `Z[x]/(x^n - 1)`, compared modulo the `n`-th
/// cyclotomic polynomial.  Simple and slow, for tests.
pub mod naive {
    use super::*;

    /// Ascending coefficients of the `n`-th cyclotomic polynomial.
    pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
        assert!(n >= 1);
        let mut f = vec![BigInt::zero(); n as usize + 1];
        f[0] = BigInt::from(-1);
        f[n as usize] = BigInt::one();
        for d in 1..n {
            if n % d == 0 {
                f = div_exact_monic(&f, &cyclotomic_polynomial(d));
            }
        }
        f
    }

    fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
        let dd = den.len() - 1;
        assert!(den[dd].is_one(), "divisor must be monic");
        let nd = num.len() - 1;
        let mut rem = num.to_vec();
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone();
            if !c.is_zero() {
                for (j, dj) in den.iter().enumerate() {
                    let t = &c * dj;
                    rem[k + j] -= t;
                }
            }
            q[k] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "division must be exact");
        q
    }

    /// Dense representative of `sum coeffs[i] * zeta_n^i` in
    /// `Z[x]/(x^n - 1)`.
    pub fn from_power_basis(n: u64, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n as usize];
        for (i, c) in coeffs.iter().enumerate() {
            v[i % n as usize] += c;
        }
        v
    }

    pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    /// Cyclic convolution (multiplication in `Z[x]/(x^n - 1)`).
    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len();
        assert_eq!(n, b.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[(i + j) % n] += x * y;
                }
            }
        }
        out
    }

    /// Canonical remainder modulo the `n`-th cyclotomic polynomial.
    pub fn reduce(v: &[BigInt], n: u64) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        let mut rem = v.to_vec();
        for k in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if !c.is_zero() {
                for (j, pj) in phi.iter().take(d).enumerate() {
                    let t = &c * pj;
                    rem[k - d + j] -= t;
                }
            }
        }
        rem.truncate(d);
        rem
    }

    /// Whether two dense representatives denote the same element of
    /// `Z[zeta_n]`.
    pub fn equal_in_ring(a: &[BigInt], b: &[BigInt], n: u64) -> bool {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        reduce(&diff, n).iter().all(Zero::is_zero)
    }

    /// Re-expresses a representative over conductor `m` on conductor `big`
    /// (a multiple of `m`): `zeta_m = zeta_big^(big/m)`.
    pub fn embed(v: &[BigInt], big: u64) -> Vec<BigInt> {
        let m = v.len() as u64;
        assert_eq!(big % m, 0);
        let stride = (big / m) as usize;
        let mut out = vec![BigInt::zero(); big as usize];
        for (i, c) in v.iter().enumerate() {
            out[i * stride] += c;
        }
        out
    }

    /// Floating-point evaluation of a tensor-form value, for independent
    /// sanity checks (each basis element is a product of explicit roots of
    /// unity).
    pub fn complex_eval_tensor(x: &CycInt) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        for (idx, c) in x.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exps = x.exponents_at(idx);
            let mut theta = 0.0f64;
            for (ci, &(p, a)) in x.components().iter().enumerate() {
                theta += exps[ci] as f64 / p.pow(a) as f64;
            }
            theta *= std::f64::consts::TAU;
            let cf = big_to_f64(c);
            re += cf * theta.cos();
            im += cf * theta.sin();
        }
        (re, im)
    }

    /// Floating-point evaluation of a dense representative at
    /// `x = zeta_n`.
    pub fn complex_eval_dense(v: &[BigInt], n: u64) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = std::f64::consts::TAU * i as f64 / n as f64;
            let cf = big_to_f64(c);
            re += cf * theta.cos();
            im += cf * theta.sin();
        }
        (re, im)
    }

    fn big_to_f64(c: &BigInt) -> f64 {
        let (sign, digits) = c.to_u64_digits();
        let mut v = 0.0f64;
        for d in digits.iter().rev() {
            v = v * 18446744073709551616.0 + *d as f64;
        }
        if sign == num_bigint::Sign::Minus {
            -v
        } else {
            v
        }
    }
}
