use crate::algebra::CoeffRing;
use crate::codec::linalg::{self, Matrix};
use crate::error::{Error, Result};
use crate::galois::{Felt, GaloisField};
use crate::skew::{OreRing, SkewPoly};

/// An `[n, k]` linear code given by a full-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: GaloisField,
    n: usize,
    generator: Matrix,
    parity_check: Matrix,
}

impl LinearCode {
    /// Rejects generator matrices that are not of full row rank.
    pub fn new(field: GaloisField, n: usize, generator: Matrix) -> Result<Self> {
        if let Some(r) = generator.iter().find(|r| r.len() != n) {
            return Err(Error::Mismatch(format!("row of length {} in a length-{n} code", r.len())));
        }
        let rank = linalg::rank(&field, &generator);
        if rank != generator.len() {
            return Err(Error::RankDeficient { expected: generator.len(), got: rank });
        }
        let parity_check = linalg::null_space(&field, &generator, n);
        Ok(LinearCode { field, n, generator, parity_check })
    }

    /// Code spanned by arbitrary rows, reduced to a basis.
    pub fn from_spanning(field: GaloisField, n: usize, rows: &[Vec<Felt>]) -> Result<Self> {
        let (basis, _) = linalg::rref(&field, rows);
        Self::new(field, n, basis)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// `(n-k) x n` with `G H^T = 0`.
    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    pub fn contains(&self, c: &[Felt]) -> bool {
        c.len() == self.n && self.parity_check.iter().all(|h| linalg::dot(&self.field, h, c).is_zero())
    }

    pub fn encode(&self, message: &[Felt]) -> Vec<Felt> {
        linalg::vec_mul(&self.field, message, &self.generator)
    }

    /// `q^k`, saturating.
    pub fn size(&self) -> u64 {
        (self.field.order() as u64).saturating_pow(self.k() as u32)
    }

    /// The `index`-th codeword in message order (base-`q` digits of `index`).
    pub fn codeword(&self, mut index: u64) -> Vec<Felt> {
        let q = self.field.order() as u64;
        let msg: Vec<Felt> = (0..self.k())
            .map(|_| {
                let d = index % q;
                index /= q;
                self.field.from_code(d as u32).unwrap()
            })
            .collect();
        self.encode(&msg)
    }

    /// Every codeword; only sensible for small `q^k`.
    pub fn codewords(&self) -> impl Iterator<Item = Vec<Felt>> + '_ {
        (0..self.size()).map(move |i| self.codeword(i))
    }
}

/// `(theta(c_{n-1}) + delta(c_0), theta(c_0) + delta(c_1), ..., theta(c_{n-2}) + delta(c_{n-1}))`.
pub fn tau_shift<R: CoeffRing>(ring: &OreRing<R>, c: &[R::Elem]) -> Vec<R::Elem> {
    let n = c.len();
    let base = ring.base();
    (0..n)
        .map(|i| base.add(&ring.sigma(&c[(i + n - 1) % n]), &ring.delta(&c[i])))
        .collect()
}

/// A `(theta, delta)`-cyclic code `<g>` of length `n` over a field.
#[derive(Clone, Debug)]
pub struct SkewCyclicCode {
    ring: OreRing<GaloisField>,
    generator_poly: SkewPoly<Felt>,
    n: usize,
    code: LinearCode,
}

impl SkewCyclicCode {
    pub fn ring(&self) -> &OreRing<GaloisField> {
        &self.ring
    }

    pub fn generator_poly(&self) -> &SkewPoly<Felt> {
        &self.generator_poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn into_code(self) -> LinearCode {
        self.code
    }
}

/// Rows `tau^i(g)` for `i < n - deg g`, with rank and shift-closure checked.
pub fn code_from_generator(
    ring: &OreRing<GaloisField>,
    g: &SkewPoly<Felt>,
    n: usize,
) -> Result<SkewCyclicCode> {
    let field = ring.base();
    let d = g
        .degree()
        .ok_or_else(|| Error::InvalidParameter("zero generator polynomial".into()))?;
    if *g.leading().unwrap() != Felt::ONE {
        return Err(Error::InvalidParameter("generator polynomial must be monic".into()));
    }
    if d >= n {
        return Err(Error::InvalidParameter(format!("generator degree {d} is not below n = {n}")));
    }
    if !ring.is_right_divisor(g, n) {
        return Err(Error::NotRightDivisor { n });
    }
    let k = n - d;
    let mut row = g.coeffs().to_vec();
    row.resize(n, Felt::ZERO);
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let next = tau_shift(ring, &row);
        rows.push(std::mem::replace(&mut row, next));
    }
    let got = linalg::rank(field, &rows);
    if got != k {
        return Err(Error::RankDeficient { expected: k, got });
    }
    let code = LinearCode::new(field.clone(), n, rows)?;
    for r in code.generator() {
        if !code.contains(&tau_shift(ring, r)) {
            return Err(Error::Structural("row space is not closed under the shift".into()));
        }
    }
    Ok(SkewCyclicCode { ring: ring.clone(), generator_poly: g.clone(), n, code })
}
