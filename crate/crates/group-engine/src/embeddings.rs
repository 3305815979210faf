//! Standard embeddings of the general linear group into the isometry
//! groups of forms.
//!
//! Writing `γ(g) = j_n · (g^T)⁻¹ · j_n` for the "flip-inverse-transpose"
//! involution of `GL_n`, the maps are:
//!
//! * `phi_paired`:   `g ↦ diag(g, γ(g))`, which lands in `Sp_{2n}(q)`
//!   for the form `i_{2n}` and in `SO⁺_{2n}(q)` for the form `j_{2n}`
//!   (the same matrix preserves both);
//! * `psi_odd`:      `g ↦ diag(g, 1, γ(g))`, landing in `SO_{2n+1}(q)`;
//! * `psi_minus`:    `g ↦ diag(g, 1, 1, γ(g))` on `GL_{n-1}`, landing in
//!   the minus-type group `SO⁻_{2n}(q)` after embedding entries into
//!   `GF(q^2)` — the two fixed middle coordinates make it commute with
//!   the twist.
//!
//! All three are injective group homomorphisms, and they send `g⁻¹`-
//! conjugators to conjugators, so reality of `g` in `GL_n` transfers to
//! reality of the embedded element.

use algebra_core::Matrix;

/// `γ(g) = j · (g^T)⁻¹ · j`, the form-compatible companion block.
pub fn flip_inverse_transpose(g: &Matrix) -> Matrix {
    let j = Matrix::antidiag(g.field(), g.nrows());
    let gti = g
        .transpose()
        .inverse()
        .expect("embedding requires an invertible matrix");
    j.mul(&gti).mul(&j)
}

/// `g ↦ diag(g, γ(g))`: into `Sp_{2n}(q)` and `SO⁺_{2n}(q)` alike.
pub fn phi_paired(g: &Matrix) -> Matrix {
    Matrix::block_diag(&[g, &flip_inverse_transpose(g)])
}

/// `g ↦ diag(g, 1, γ(g))`: into `SO_{2n+1}(q)`.
pub fn psi_odd(g: &Matrix) -> Matrix {
    let one = Matrix::identity(g.field(), 1);
    Matrix::block_diag(&[g, &one, &flip_inverse_transpose(g)])
}

/// `g ↦ diag(g, id_2, γ(g))` on `GL_{n-1}`: into `SO⁻_{2n}(q)` (after
/// embedding the entries into `GF(q^2)`).
pub fn psi_minus(g: &Matrix) -> Matrix {
    let two = Matrix::identity(g.field(), 2);
    Matrix::block_diag(&[g, &two, &flip_inverse_transpose(g)])
}
