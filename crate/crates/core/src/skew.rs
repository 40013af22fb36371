//! Skew polynomial rings `R[x; sigma, delta]` with `x r = sigma(r) x + delta(r)`
//! and the inner derivation `delta(r) = alpha (sigma(r) - r)`.

use rayon::prelude::*;

use crate::algebra::CoeffRing;
use crate::error::{Error, Result};
use crate::galois::{Felt, FrobeniusAut, GaloisField};

/// A skew polynomial as an ascending coefficient vector with no stored
/// leading zero; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPoly<E> {
    coeffs: Vec<E>,
}

impl<E> SkewPoly<E> {
    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    /// Ascending coefficients; index `i` holds the coefficient of `x^i`.
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

/// `delta(r) = alpha (sigma(r) - r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerDerivation<E> {
    alpha: E,
}

impl<E: Clone> InnerDerivation<E> {
    pub fn new(alpha: E) -> Self {
        InnerDerivation { alpha }
    }

    pub fn alpha(&self) -> &E {
        &self.alpha
    }

    pub fn apply<R: CoeffRing<Elem = E>>(&self, ring: &R, aut: FrobeniusAut, r: &E) -> E {
        ring.mul(&self.alpha, &ring.sub(&ring.twist(aut, r), r))
    }
}

/// The ring `R[x; sigma, delta]` over a coefficient ring `R`.
#[derive(Clone, Debug)]
pub struct OreRing<R: CoeffRing> {
    base: R,
    theta: FrobeniusAut,
    derivation: InnerDerivation<R::Elem>,
}

impl<R: CoeffRing> OreRing<R> {
    pub fn new(base: R, theta: FrobeniusAut, alpha: R::Elem) -> Self {
        OreRing { base, theta, derivation: InnerDerivation::new(alpha) }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn theta(&self) -> FrobeniusAut {
        self.theta
    }

    pub fn alpha(&self) -> &R::Elem {
        self.derivation.alpha()
    }

    pub fn derivation(&self) -> &InnerDerivation<R::Elem> {
        &self.derivation
    }

    /// Same base ring, automorphism and derivation.
    pub fn same_context(&self, other: &Self) -> bool {
        self.base.same_ring(&other.base)
            && self.theta == other.theta
            && self.derivation == other.derivation
    }

    pub fn sigma(&self, a: &R::Elem) -> R::Elem {
        self.base.twist(self.theta, a)
    }

    pub fn delta(&self, a: &R::Elem) -> R::Elem {
        self.derivation.apply(&self.base, self.theta, a)
    }

    /// Whether `delta` commutes with `sigma` on every listed element.
    pub fn delta_commutes_on<'a>(&self, elems: impl IntoIterator<Item = &'a R::Elem>) -> bool
    where
        R::Elem: 'a,
    {
        elems.into_iter().all(|a| self.delta(&self.sigma(a)) == self.sigma(&self.delta(a)))
    }

    pub fn poly(&self, mut coeffs: Vec<R::Elem>) -> SkewPoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn try_poly(&self, coeffs: Vec<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        if let Some(c) = coeffs.iter().find(|c| !self.base.contains(c)) {
            return Err(Error::Mismatch(format!("coefficient {c:?} is not in the base ring")));
        }
        Ok(self.poly(coeffs))
    }

    pub fn constant(&self, c: R::Elem) -> SkewPoly<R::Elem> {
        self.poly(vec![c])
    }

    pub fn one(&self) -> SkewPoly<R::Elem> {
        self.constant(self.base.one())
    }

    /// `c x^i`.
    pub fn monomial(&self, c: R::Elem, i: usize) -> SkewPoly<R::Elem> {
        let mut v = vec![self.base.zero(); i];
        v.push(c);
        self.poly(v)
    }

    pub fn x_power(&self, n: usize) -> SkewPoly<R::Elem> {
        self.monomial(self.base.one(), n)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(&self, n: usize) -> SkewPoly<R::Elem> {
        let mut v = vec![self.base.zero(); n + 1];
        v[0] = self.base.neg(&self.base.one());
        v[n] = self.base.add(&v[n], &self.base.one());
        self.poly(v)
    }

    pub fn add(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        let n = f.coeffs.len().max(g.coeffs.len());
        let zero = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let a = f.coeffs.get(i).unwrap_or(&zero);
                let b = g.coeffs.get(i).unwrap_or(&zero);
                self.base.add(a, b)
            })
            .collect();
        self.poly(v)
    }

    pub fn neg(&self, f: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        SkewPoly { coeffs: f.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    pub fn sub(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        self.add(f, &self.neg(g))
    }

    /// `c f` with the scalar on the left.
    pub fn scale_left(&self, c: &R::Elem, f: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        self.poly(f.coeffs.iter().map(|a| self.base.mul(c, a)).collect())
    }

    /// `x f`, one application of the commutation rule per coefficient.
    pub fn mul_x(&self, f: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        if f.is_zero() {
            return SkewPoly::zero();
        }
        let mut out = vec![self.base.zero(); f.coeffs.len() + 1];
        for (i, c) in f.coeffs.iter().enumerate() {
            out[i + 1] = self.base.add(&out[i + 1], &self.sigma(c));
            out[i] = self.base.add(&out[i], &self.delta(c));
        }
        self.poly(out)
    }

    /// `f g`: each `f_i x^i` is pushed through `g` by `i` commutations.
    pub fn mul(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        let mut acc = SkewPoly::zero();
        let mut xg = g.clone();
        for (i, c) in f.coeffs.iter().enumerate() {
            if i > 0 {
                xg = self.mul_x(&xg);
            }
            if !self.base.is_zero(c) {
                acc = self.add(&acc, &self.scale_left(c, &xg));
            }
        }
        acc
    }

    pub fn try_mul(
        &self,
        f: &SkewPoly<R::Elem>,
        g: &SkewPoly<R::Elem>,
    ) -> Result<SkewPoly<R::Elem>> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.mul(f, g))
    }

    pub fn try_add(
        &self,
        f: &SkewPoly<R::Elem>,
        g: &SkewPoly<R::Elem>,
    ) -> Result<SkewPoly<R::Elem>> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.add(f, g))
    }

    fn check(&self, f: &SkewPoly<R::Elem>) -> Result<()> {
        match f.coeffs.iter().find(|c| !self.base.contains(c)) {
            Some(c) => Err(Error::Mismatch(format!("coefficient {c:?} is not in the base ring"))),
            None => Ok(()),
        }
    }

    /// `x^n a` by iterated commutation.
    pub fn x_pow_times(&self, n: usize, a: &R::Elem) -> SkewPoly<R::Elem> {
        (0..n).fold(self.constant(a.clone()), |acc, _| self.mul_x(&acc))
    }

    /// `sum_k C(n,k) (sigma^{n-k} delta^k)(a) x^{n-k}`, binomials reduced mod `p`.
    /// Equals [`OreRing::x_pow_times`] when `delta` commutes with `sigma`.
    pub fn binomial_x_pow_times(&self, n: usize, a: &R::Elem) -> SkewPoly<R::Elem> {
        let p = self.base.field().characteristic() as u64;
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = (row[k - 1] + row[k]) % p;
            }
            row = next;
        }
        let mut coeffs = vec![self.base.zero(); n + 1];
        let mut dk = a.clone();
        for (k, &binom) in row.iter().enumerate() {
            if k > 0 {
                dk = self.delta(&dk);
            }
            let mut term = dk.clone();
            for _ in 0..(n - k) {
                term = self.sigma(&term);
            }
            let scalar = self.base.scalar(self.base.field().from_int(binom as i64));
            coeffs[n - k] = self.base.mul(&scalar, &term);
        }
        self.poly(coeffs)
    }

    /// Right division `f = q g + r` with `deg r < deg g`; the identity is
    /// re-checked before returning.
    pub fn right_divide(
        &self,
        f: &SkewPoly<R::Elem>,
        g: &SkewPoly<R::Elem>,
    ) -> Result<(SkewPoly<R::Elem>, SkewPoly<R::Elem>)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let df = match f.degree() {
            Some(d) if d >= dg => d,
            _ => return Ok((SkewPoly::zero(), f.clone())),
        };
        // x^s g for s = 0..=df-dg; leading coefficient sigma^s(lc g)
        let mut shifted = Vec::with_capacity(df - dg + 1);
        shifted.push(g.clone());
        for s in 1..=(df - dg) {
            let next = self.mul_x(&shifted[s - 1]);
            shifted.push(next);
        }
        let mut quotient = vec![self.base.zero(); df - dg + 1];
        let mut rem = f.clone();
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let s = dr - dg;
            let xg = &shifted[s];
            if xg.degree() != Some(dr) {
                return Err(Error::NonUnitLeading);
            }
            let inv = self.base.inverse(xg.leading().unwrap()).ok_or(Error::NonUnitLeading)?;
            let c = self.base.mul(rem.leading().unwrap(), &inv);
            quotient[s] = self.base.add(&quotient[s], &c);
            rem = self.sub(&rem, &self.scale_left(&c, xg));
            if rem.degree() == Some(dr) {
                // c sigma^s(lc) did not cancel the lead: zero divisors in the base
                return Err(Error::NonUnitLeading);
            }
        }
        let q = self.poly(quotient);
        if self.add(&self.mul(&q, g), &rem) != *f {
            return Err(Error::Structural("right division failed to reconstruct".into()));
        }
        Ok((q, rem))
    }

    /// Remainder of `x^n - 1` on right division by `g`.
    pub fn remainder_of_xn_minus_one(
        &self,
        g: &SkewPoly<R::Elem>,
        n: usize,
    ) -> Result<SkewPoly<R::Elem>> {
        let d = g.degree().ok_or(Error::DivisionByZero)?;
        if d == 0 {
            return if self.base.inverse(g.leading().unwrap()).is_some() {
                Ok(SkewPoly::zero())
            } else {
                Err(Error::NonUnitLeading)
            };
        }
        let inv = self.base.inverse(g.leading().unwrap()).ok_or(Error::NonUnitLeading)?;
        // r = x^k mod g, advanced by r <- x r - c g
        let mut r = self.one();
        for _ in 0..n {
            let xr = self.mul_x(&r);
            r = if xr.degree() == Some(d) {
                let c = self.base.mul(xr.leading().unwrap(), &inv);
                self.sub(&xr, &self.scale_left(&c, g))
            } else {
                xr
            };
        }
        Ok(self.sub(&r, &self.one()))
    }

    /// Whether `g` right-divides `x^n - 1`.
    pub fn is_right_divisor(&self, g: &SkewPoly<R::Elem>, n: usize) -> bool {
        if n == 0 || g.is_zero() {
            return false;
        }
        match self.remainder_of_xn_minus_one(g, n) {
            Ok(r) => r.is_zero(),
            Err(_) => self.right_divide(&self.x_n_minus_one(n), g).is_ok_and(|(_, r)| r.is_zero()),
        }
    }

    /// Coefficient vector of `f mod (x^n - 1)` (left-module reduction), length `n`.
    pub fn reduce_mod_xn_minus_one(&self, f: &SkewPoly<R::Elem>, n: usize) -> Vec<R::Elem> {
        let (_, r) = self
            .right_divide(f, &self.x_n_minus_one(n))
            .expect("x^n - 1 is monic");
        let mut v = r.into_coeffs();
        v.resize(n, self.base.zero());
        v
    }

    /// `sum_i a_{n-i} x^i`.
    pub fn reverse_poly(&self, a: &SkewPoly<R::Elem>, n: usize) -> Result<SkewPoly<R::Elem>> {
        if let Some(d) = a.degree() {
            if d > n {
                return Err(Error::DegreeExceedsWindow { degree: d, window: n });
            }
        }
        let zero = self.base.zero();
        Ok(self.poly((0..=n).map(|i| a.coeffs.get(n - i).unwrap_or(&zero).clone()).collect()))
    }

    /// `1 + x + ... + x^n`.
    pub fn all_one_poly(&self, n: usize) -> SkewPoly<R::Elem> {
        self.poly(vec![self.base.one(); n + 1])
    }

    /// Applies `delta` coefficientwise.
    pub fn delta_poly(&self, f: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        self.poly(f.coeffs.iter().map(|c| self.delta(c)).collect())
    }
}

/// Precomputed `sigma`/`delta` tables for fast divisibility tests over a field.
#[derive(Clone)]
struct FieldKernel {
    field: GaloisField,
    sigma: Vec<Felt>,
    delta: Vec<Felt>,
}

impl FieldKernel {
    fn new(ring: &OreRing<GaloisField>) -> Self {
        let f = ring.base().clone();
        let sigma = f.elements().map(|a| ring.sigma(&a)).collect();
        let delta = f.elements().map(|a| ring.delta(&a)).collect();
        FieldKernel { field: f, sigma, delta }
    }

    /// Whether the monic `x^d + lower` right-divides `x^n - 1`.
    fn divides(&self, lower: &[Felt], n: usize, r: &mut Vec<Felt>, tmp: &mut Vec<Felt>) -> bool {
        let f = &self.field;
        let d = lower.len();
        r.clear();
        r.resize(d, Felt::ZERO);
        r[0] = Felt::ONE;
        for _ in 0..n {
            tmp.clear();
            tmp.resize(d + 1, Felt::ZERO);
            for (i, &c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                tmp[i + 1] = f.add(tmp[i + 1], self.sigma[c.code() as usize]);
                tmp[i] = f.add(tmp[i], self.delta[c.code() as usize]);
            }
            let lead = tmp[d];
            for i in 0..d {
                r[i] = f.sub(tmp[i], f.mul(lead, lower[i]));
            }
        }
        r[0] = f.sub(r[0], Felt::ONE);
        r.iter().all(|c| c.is_zero())
    }
}

/// Outcome of a bounded scan for monic right divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorScan {
    pub divisors: Vec<SkewPoly<Felt>>,
    /// Index to resume from; equals `total` when the scan is complete.
    pub next_cursor: u64,
    /// Number of candidate indices, `q^d`.
    pub total: u64,
    pub complete: bool,
}

/// Sequential stream of monic degree-`d` right divisors of `x^n - 1`, in
/// lexicographic order of `(g_0, ..., g_{d-1})` with `g_0` most significant.
pub struct RightDivisorIter {
    kernel: FieldKernel,
    n: usize,
    d: usize,
    cursor: u64,
    total: u64,
    r: Vec<Felt>,
    tmp: Vec<Felt>,
}

impl RightDivisorIter {
    /// Index of the next candidate to examine.
    pub fn cursor(&self) -> u64 {
        self.cursor
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for RightDivisorIter {
    type Item = SkewPoly<Felt>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.cursor < self.total {
            let idx = self.cursor;
            self.cursor += 1;
            let lower = candidate_coeffs(&self.kernel.field, self.d, idx);
            if lower[0].is_zero() {
                // zero constant term cannot divide x^n - 1
                continue;
            }
            if self.kernel.divides(&lower, self.n, &mut self.r, &mut self.tmp) {
                let mut c = lower;
                c.push(Felt::ONE);
                return Some(SkewPoly { coeffs: c });
            }
        }
        None
    }
}

fn candidate_coeffs(field: &GaloisField, d: usize, mut idx: u64) -> Vec<Felt> {
    let q = field.order() as u64;
    let mut c = vec![Felt::ZERO; d];
    for i in (0..d).rev() {
        c[i] = field.from_code((idx % q) as u32).unwrap();
        idx /= q;
    }
    c
}

/// Index of a monic candidate in the enumeration order of [`RightDivisorIter`].
pub fn candidate_index(field: &GaloisField, g: &SkewPoly<Felt>) -> Option<u64> {
    let d = g.degree()?;
    let q = field.order() as u64;
    g.coeffs()[..d].iter().try_fold(0u64, |acc, c| acc.checked_mul(q)?.checked_add(c.code() as u64))
}

impl OreRing<GaloisField> {
    /// Streams every monic degree-`d` right divisor of `x^n - 1`, starting at `cursor`.
    pub fn right_divisors(&self, n: usize, d: usize, cursor: u64) -> RightDivisorIter {
        let q = self.base().order() as u64;
        let total = if d == 0 || d > n { 0 } else { q.saturating_pow(d as u32) };
        RightDivisorIter {
            kernel: FieldKernel::new(self),
            n,
            d,
            cursor: cursor.min(total),
            total,
            r: Vec::new(),
            tmp: Vec::new(),
        }
    }

    /// Parallel scan of at most `budget` candidate indices from `cursor`.
    /// Results keep enumeration order regardless of scheduling.
    pub fn scan_right_divisors(&self, n: usize, d: usize, cursor: u64, budget: u64) -> DivisorScan {
        const CHUNK: u64 = 4096;
        let q = self.base().order() as u64;
        let total = if d == 0 || d > n { 0 } else { q.saturating_pow(d as u32) };
        let start = cursor.min(total);
        let end = start.saturating_add(budget).min(total);
        // indices below q^{d-1} have g_0 = 0
        let first = start.max(if d == 0 { 0 } else { q.saturating_pow(d as u32 - 1) }).min(end);
        let kernel = FieldKernel::new(self);
        let chunks: Vec<(u64, u64)> = (first..end)
            .step_by(CHUNK as usize)
            .map(|s| (s, (s + CHUNK).min(end)))
            .collect();
        let divisors: Vec<SkewPoly<Felt>> = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut r = Vec::new();
                let mut tmp = Vec::new();
                let mut found = Vec::new();
                for idx in lo..hi {
                    let lower = candidate_coeffs(&kernel.field, d, idx);
                    if kernel.divides(&lower, n, &mut r, &mut tmp) {
                        let mut c = lower;
                        c.push(Felt::ONE);
                        found.push(SkewPoly { coeffs: c });
                    }
                }
                found
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        DivisorScan { divisors, next_cursor: end, total, complete: end == total }
    }
}
