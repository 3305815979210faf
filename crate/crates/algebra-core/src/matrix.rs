//! Dense matrices over a registered finite field.
//!
//! Everything is exact.  The characteristic polynomial uses the
//! division-free Berkowitz algorithm, which is simple, deterministic, and
//! fast enough for the small dimensions that occur here (at most ~16).

use std::fmt;
use std::sync::Arc;

use crate::field::{FieldDescriptor, FieldElement};
use crate::poly::Poly;
use crate::AlgebraError;

/// A dense `rows x cols` matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Arc<FieldDescriptor>,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Arc<FieldDescriptor>, rows: usize, cols: usize) -> Self {
        Matrix {
            field: Arc::clone(field),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Arc<FieldDescriptor>, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row slices of field elements.
    pub fn from_rows(field: &Arc<FieldDescriptor>, rows: &[Vec<FieldElement>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field: Arc::clone(field),
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    /// Builds a square matrix from signed integer entries (reduced mod p).
    pub fn from_i64(field: &Arc<FieldDescriptor>, rows: &[Vec<i64>]) -> Self {
        let data: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, &data)
    }

    pub fn diagonal(field: &Arc<FieldDescriptor>, entries: &[FieldElement]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Permutation matrix sending basis vector `i` to `perm[i]`.
    pub fn permutation(field: &Arc<FieldDescriptor>, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &pi) in perm.iter().enumerate() {
            m.set(pi, i, field.one());
        }
        m
    }

    /// The involutive antidiagonal permutation matrix (ones on the
    /// antidiagonal).
    pub fn antidiag(field: &Arc<FieldDescriptor>, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, field.one());
        }
        m
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.at(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self.at(r, c) == self.at(c, r)))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.at(r, c).clone());
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix { field: Arc::clone(&self.field), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Matrix { field: Arc::clone(&self.field), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(FieldElement::neg).collect();
        Matrix { field: Arc::clone(&self.field), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, a: &FieldElement) -> Self {
        let data = self.data.iter().map(|x| x.mul(a)).collect();
        Matrix { field: Arc::clone(&self.field), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let cur = out.at(r, c).add(&a.mul(b));
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = acc.add(&a.mul(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Applies the `p^j`-power Frobenius entrywise.
    pub fn apply_frobenius(&self, j: u32) -> Self {
        let data = self.data.iter().map(|x| x.frobenius(j)).collect();
        Matrix { field: Arc::clone(&self.field), rows: self.rows, cols: self.cols, data }
    }

    /// Lifts all entries into an extension field.
    pub fn embed(&self, target: &Arc<FieldDescriptor>) -> Result<Self, AlgebraError> {
        let data = self
            .data
            .iter()
            .map(|x| x.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { field: Arc::clone(target), rows: self.rows, cols: self.cols, data })
    }

    /// Projects all entries into a subfield, if possible.
    pub fn project(&self, small: &Arc<FieldDescriptor>) -> Result<Option<Self>, AlgebraError> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            match x.project(small)? {
                Some(y) => data.push(y),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix { field: Arc::clone(small), rows: self.rows, cols: self.cols, data }))
    }

    /// Places this square matrix at the coordinate subset `coords` (strictly
    /// increasing) of an `n x n` identity matrix.
    pub fn embed_at(&self, n: usize, coords: &[usize]) -> Self {
        assert!(self.is_square());
        assert_eq!(self.rows, coords.len());
        assert!(coords.windows(2).all(|w| w[0] < w[1]) && *coords.last().unwrap() < n);
        let mut m = Matrix::identity(&self.field, n);
        for (a, &i) in coords.iter().enumerate() {
            for (b, &j) in coords.iter().enumerate() {
                m.set(i, j, self.at(a, b).clone());
            }
        }
        m
    }

    /// The square submatrix picked out by the coordinate subset `coords`.
    pub fn submatrix(&self, coords: &[usize]) -> Self {
        let mut m = Matrix::zeros(&self.field, coords.len(), coords.len());
        for (a, &i) in coords.iter().enumerate() {
            for (b, &j) in coords.iter().enumerate() {
                m.set(a, b, self.at(i, j).clone());
            }
        }
        m
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[&Matrix]) -> Self {
        assert!(!blocks.is_empty());
        let field = Arc::clone(&blocks[0].field);
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zeros(&field, n, n);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square());
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(off + r, off + c, b.at(r, c).clone());
                }
            }
            off += b.rows;
        }
        m
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> FieldElement {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return self.field.zero();
            };
            if piv != col {
                for c in 0..n {
                    let a = m.at(piv, c).clone();
                    let b = m.at(col, c).clone();
                    m.set(piv, c, b);
                    m.set(col, c, a);
                }
                det = det.neg();
            }
            let pval = m.at(col, col).clone();
            det = det.mul(&pval);
            let pinv = pval.inverse().unwrap();
            for r in col + 1..n {
                let f = m.at(r, col).mul(&pinv);
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.at(r, c).sub(&f.mul(m.at(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(&self.field, n);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Err(AlgebraError::SingularMatrix);
            };
            if piv != col {
                for c in 0..n {
                    let (a, b) = (m.at(piv, c).clone(), m.at(col, c).clone());
                    m.set(piv, c, b);
                    m.set(col, c, a);
                    let (a, b) = (inv.at(piv, c).clone(), inv.at(col, c).clone());
                    inv.set(piv, c, b);
                    inv.set(col, c, a);
                }
            }
            let pinv = m.at(col, col).inverse()?;
            for c in 0..n {
                m.set(col, c, m.at(col, c).mul(&pinv));
                inv.set(col, c, inv.at(col, c).mul(&pinv));
            }
            for r in 0..n {
                if r == col || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for c in 0..n {
                    let v = m.at(r, c).sub(&f.mul(m.at(col, c)));
                    m.set(r, c, v);
                    let v = inv.at(r, c).sub(&f.mul(inv.at(col, c)));
                    inv.set(r, c, v);
                }
            }
        }
        Ok(inv)
    }

    pub fn trace(&self) -> FieldElement {
        assert!(self.is_square());
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Monic characteristic polynomial `det(xI - A)` by the division-free
    /// Berkowitz algorithm.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let field = &self.field;
        // c holds the coefficients of the char poly of the leading principal
        // minor, in descending order (c[0] is the leading 1).
        let mut c: Vec<FieldElement> = vec![field.one()];
        for i in 1..=n {
            // s_j = R * B^(j-1) * C for the (i x i) leading block split into
            // B (top-left i-1), C (last column), R (last row), a (corner).
            let a = self.at(i - 1, i - 1).clone();
            let mut q: Vec<FieldElement> = Vec::with_capacity(i + 1);
            q.push(field.one());
            q.push(a.neg());
            if i > 1 {
                // v = C; iteratively v = B v, taking R·v each round.
                let mut v: Vec<FieldElement> = (0..i - 1).map(|r| self.at(r, i - 1).clone()).collect();
                for _ in 1..i {
                    let mut dot = field.zero();
                    for (k, vk) in v.iter().enumerate() {
                        if !vk.is_zero() {
                            dot = dot.add(&self.at(i - 1, k).mul(vk));
                        }
                    }
                    q.push(dot.neg());
                    // v = B v
                    let mut nv = vec![field.zero(); i - 1];
                    for (r, slot) in nv.iter_mut().enumerate() {
                        let mut acc = field.zero();
                        for (k, vk) in v.iter().enumerate() {
                            if !vk.is_zero() {
                                acc = acc.add(&self.at(r, k).mul(vk));
                            }
                        }
                        *slot = acc;
                    }
                    v = nv;
                }
            }
            // c_new = T q * c (lower-triangular Toeplitz with first column q).
            let mut c_new = vec![field.zero(); i + 1];
            for (m_idx, slot) in c_new.iter_mut().enumerate() {
                let mut acc = field.zero();
                for (j, cj) in c.iter().enumerate() {
                    if m_idx >= j && m_idx - j < q.len() && !cj.is_zero() {
                        acc = acc.add(&q[m_idx - j].mul(cj));
                    }
                }
                *slot = acc;
            }
            c = c_new;
        }
        c.reverse();
        Poly::new(field, c)
    }

    /// Characteristic polynomial roots in a splitting extension, with
    /// multiplicities, sorted structurally.  This is the eigenvalue multiset
    /// of the matrix over the algebraic closure.
    pub fn eigenvalue_multiset(
        &self,
    ) -> Result<(Arc<FieldDescriptor>, Vec<(FieldElement, usize)>), AlgebraError> {
        self.charpoly().splitting_roots()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if piv != rank {
                for c in 0..cols {
                    let (a, b) = (m.at(piv, c).clone(), m.at(rank, c).clone());
                    m.set(piv, c, b);
                    m.set(rank, c, a);
                }
            }
            let pinv = m.at(rank, col).inverse().unwrap();
            for c in 0..cols {
                m.set(rank, c, m.at(rank, c).mul(&pinv));
            }
            for r in 0..rows {
                if r != rank && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for c in 0..cols {
                        let v = m.at(r, c).sub(&f.mul(m.at(rank, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![self.field.zero(); cols];
            v[free] = self.field.one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = m.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// The multiplicative order of an invertible matrix, by brute powering;
    /// errors if `limit` is exceeded.
    pub fn multiplicative_order(&self, limit: u64) -> Result<u64, AlgebraError> {
        assert!(self.is_square());
        let mut acc = self.clone();
        let id = Matrix::identity(&self.field, self.rows);
        for k in 1..=limit {
            if acc == id {
                return Ok(k);
            }
            acc = acc.mul(self);
        }
        Err(AlgebraError::OrderSearchExceeded(limit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    #[test]
    fn multiply_invert_det() {
        let f7 = FieldDescriptor::get(7, 1).unwrap();
        let a = Matrix::from_i64(&f7, &[vec![1, 2], vec![3, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.det(), f7.from_i64(-2));
        let singular = Matrix::from_i64(&f7, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.det().is_zero());
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn charpoly_matches_trace_and_det() {
        let f5 = FieldDescriptor::get(5, 1).unwrap();
        let a = Matrix::from_i64(&f5, &[vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 4]]);
        let cp = a.charpoly();
        assert_eq!(cp.degree(), Some(3));
        assert!(cp.is_monic());
        // x^3 - tr x^2 + ... - det  =>  coefficient checks.
        assert_eq!(cp.coeff(2), a.trace().neg());
        assert_eq!(cp.coeff(0), a.det().neg()); // (-1)^3 det
        // Cayley–Hamilton.
        let mut acc = Matrix::zeros(&f5, 3, 3);
        for (i, c) in cp.coeffs().iter().enumerate() {
            acc = acc.add(&a.pow(i as u64).scale(c));
        }
        assert!(acc.data.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let f3 = FieldDescriptor::get(3, 1).unwrap();
        // Rank 1 over GF(3): the second row is twice the first.
        let a = Matrix::from_i64(&f3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 0]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        // Rank 2: one-dimensional kernel spanned by (-1, -2, 1).
        let b = Matrix::from_i64(&f3, &[vec![1, 0, 1], vec![0, 1, 2], vec![0, 0, 0]]);
        let ker = b.kernel();
        assert_eq!(ker.len(), 1);
        assert!(b.mul_vec(&ker[0]).iter().all(|x| x.is_zero()));
        assert!(Matrix::identity(&f3, 3).kernel().is_empty());
    }

    #[test]
    fn eigenvalues_of_companion() {
        let f3 = FieldDescriptor::get(3, 1).unwrap();
        // Companion of x^4+x^3+x^2+x+1: eigenvalues are primitive 5th roots.
        let a = Matrix::from_i64(
            &f3,
            &[
                vec![0, 0, 0, -1],
                vec![1, 0, 0, -1],
                vec![0, 1, 0, -1],
                vec![0, 0, 1, -1],
            ],
        );
        let (big, eigs) = a.eigenvalue_multiset().unwrap();
        assert_eq!(big.size(), 81);
        assert_eq!(eigs.len(), 4);
        for (r, mult) in &eigs {
            assert_eq!(*mult, 1);
            assert_eq!(r.multiplicative_order(), 5);
        }
        assert_eq!(a.multiplicative_order(100).unwrap(), 5);
    }

    #[test]
    fn structural_helpers() {
        let f3 = FieldDescriptor::get(3, 1).unwrap();
        let j = Matrix::antidiag(&f3, 4);
        assert!(j.mul(&j).is_identity());
        assert!(j.is_symmetric());
        let p = Matrix::permutation(&f3, &[1, 0, 3, 2]);
        assert!(p.mul(&p).is_identity());
        assert!(p.det().is_one()); // two transpositions
        let b = Matrix::from_i64(&f3, &[vec![0, 2], vec![1, 0]]);
        let e = b.embed_at(4, &[0, 3]);
        assert_eq!(e.at(0, 3), b.at(0, 1));
        assert_eq!(e.at(3, 0), b.at(1, 0));
        assert!(e.at(1, 1).is_one() && e.at(2, 2).is_one());
        assert_eq!(e.submatrix(&[0, 3]), b);
    }
}
