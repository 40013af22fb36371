//! The Gray map `Phi(a_0 + a_1 v + ... + a_{l-1} v^{l-1}) = (a_0, ..., a_{l-1}) N`
//! with `N N^T = beta I`.

use crate::codec::code::LinearCode;
use crate::codec::linalg::{self, Matrix};
use crate::codec::rl::RlCode;
use crate::error::{Error, Result};
use crate::galois::{Felt, GaloisField};
use crate::notation::format_matrix;
use crate::ring_rl::RlElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayMatrix {
    n: Matrix,
    beta: Felt,
}

impl GrayMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.n
    }

    pub fn beta(&self) -> Felt {
        self.beta
    }

    pub fn l(&self) -> usize {
        self.n.len()
    }

    /// `(a_0, ..., a_{l-1}) N`.
    pub fn apply(&self, field: &GaloisField, a: &RlElement) -> Vec<Felt> {
        linalg::vec_mul(field, a.coeffs(), &self.n)
    }
}

/// Checks `N` is `l x l` with `N N^T = beta I` for a nonzero `beta`.
pub fn gray_matrix_check(field: &GaloisField, n: Matrix, l: usize) -> Result<GrayMatrix> {
    if n.len() != l || n.iter().any(|r| r.len() != l) {
        return Err(Error::NotGrayMatrix(format!("expected a {l}x{l} matrix")));
    }
    let prod = linalg::mul(field, &n, &linalg::transpose(&n));
    let beta = prod[0][0];
    if beta.is_zero() {
        return Err(Error::NotGrayMatrix("N N^T has a zero diagonal".into()));
    }
    for (i, row) in prod.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let want = if i == j { beta } else { Felt::ZERO };
            if x != want {
                return Err(Error::NotGrayMatrix(format!(
                    "N N^T is not a scalar matrix at ({i},{j})"
                )));
            }
        }
    }
    if linalg::rank(field, &n) != l {
        return Err(Error::NotGrayMatrix("N is singular".into()));
    }
    Ok(GrayMatrix { n, beta })
}

/// Image of the code: `Phi` applied coordinatewise to `gamma_i * row` for every
/// row of every component generator matrix. Coordinate `j` of the original
/// word occupies positions `j*l .. j*l + l`.
pub fn gray_image(code: &RlCode, gray: &GrayMatrix) -> Result<LinearCode> {
    let rl = code.rl();
    let field = code.field();
    if gray.l() != rl.l() {
        return Err(Error::Mismatch(format!("Gray matrix is {0}x{0}, ring has l = {1}", gray.l(), rl.l())));
    }
    let mut rows = Vec::with_capacity(code.total_dimension());
    for (comp, gamma) in code.components().iter().zip(code.idempotents().gammas()) {
        for row in comp.code().generator() {
            rows.push(
                row.iter()
                    .flat_map(|&c| gray.apply(field, &rl.scale(c, gamma)))
                    .collect::<Vec<_>>(),
            );
        }
    }
    let expected = code.total_dimension();
    let got = linalg::rank(field, &rows);
    if got != expected {
        return Err(Error::RankDeficient { expected, got });
    }
    LinearCode::new(field.clone(), code.n() * rl.l(), rows)
}

/// `Phi` on a word of `R_l^n`.
pub fn gray_word(field: &GaloisField, gray: &GrayMatrix, word: &[RlElement]) -> Vec<Felt> {
    word.iter().flat_map(|a| gray.apply(field, a)).collect()
}

/// A labelled candidate matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayCandidate {
    pub label: String,
    pub matrix: GrayMatrix,
}

/// The identity, then for `l = 2` every `[[1,b],[-b,1]]` and `[[1,b],[b,-1]]`
/// with `1 + b^2 != 0`, in element-code order of `b`.
pub fn candidate_matrices(field: &GaloisField, l: usize) -> Vec<GrayCandidate> {
    let mut out = Vec::new();
    let mut push = |m: Matrix| {
        if let Ok(g) = gray_matrix_check(field, m, l) {
            if !out.iter().any(|c: &GrayCandidate| c.matrix == g) {
                out.push(GrayCandidate { label: format_matrix(field, g.matrix()), matrix: g });
            }
        }
    };
    push(linalg::identity(l));
    if l == 2 {
        let one = field.one();
        for b in field.elements().filter(|b| !b.is_zero()) {
            push(vec![vec![one, b], vec![field.neg(b), one]]);
            push(vec![vec![one, b], vec![b, field.neg(one)]]);
        }
    }
    out
}
