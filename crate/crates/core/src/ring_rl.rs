//! The ring `R_l = F_q[v]/(v^l - v)` and its orthogonal idempotents.

use crate::algebra::CoeffRing;
use crate::error::{Error, Result};
use crate::galois::{Felt, FrobeniusAut, GaloisField};

/// An element `a_0 + a_1 v + ... + a_{l-1} v^{l-1}` of `R_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RlElement {
    coeffs: Vec<Felt>,
}

impl RlElement {
    /// Coefficients of `1, v, ..., v^{l-1}`.
    pub fn coeffs(&self) -> &[Felt] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct RlRing {
    field: GaloisField,
    l: usize,
}

/// The idempotents `gamma_1, ..., gamma_l` with `gamma_i gamma_j = [i = j] gamma_i`
/// and `sum gamma_i = 1`.
#[derive(Clone, Debug)]
pub struct IdempotentSet {
    gammas: Vec<RlElement>,
    varsigma: Felt,
}

impl IdempotentSet {
    pub fn gammas(&self) -> &[RlElement] {
        &self.gammas
    }

    pub fn gamma(&self, i: usize) -> &RlElement {
        &self.gammas[i]
    }

    /// `omega^{(q-1)/(l-1)}`.
    pub fn varsigma(&self) -> Felt {
        self.varsigma
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

impl RlRing {
    pub fn new(field: GaloisField, l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidParameter(format!("R_l needs l >= 2, got {l}")));
        }
        Ok(RlRing { field, l })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn element(&self, coeffs: Vec<Felt>) -> Result<RlElement> {
        if coeffs.len() != self.l {
            return Err(Error::Mismatch(format!(
                "R_{} element needs {} coefficients, got {}",
                self.l,
                self.l,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| !self.field.contains(c)) {
            return Err(Error::Mismatch(format!("coefficient {c:?} outside the field")));
        }
        Ok(RlElement { coeffs })
    }

    /// `v^k`, reduced by `v^l = v`.
    pub fn v_power(&self, k: usize) -> RlElement {
        let mut coeffs = vec![Felt::ZERO; self.l];
        let idx = if k < self.l { k } else { 1 + (k - 1) % (self.l - 1) };
        coeffs[idx] = Felt::ONE;
        RlElement { coeffs }
    }

    pub fn sigma(&self, aut: FrobeniusAut, r: &RlElement) -> RlElement {
        RlElement {
            coeffs: r.coeffs.iter().map(|&c| self.field.frobenius_apply(aut, c)).collect(),
        }
    }

    fn check(&self, r: &RlElement) -> Result<()> {
        if r.coeffs.len() != self.l {
            return Err(Error::Mismatch(format!(
                "element of R_{} used in R_{}",
                r.coeffs.len(),
                self.l
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, a: &RlElement, b: &RlElement) -> Result<RlElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(CoeffRing::add(self, a, b))
    }

    pub fn try_mul(&self, a: &RlElement, b: &RlElement) -> Result<RlElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(CoeffRing::mul(self, a, b))
    }

    /// Builds the idempotents from their closed forms and checks orthogonality
    /// and completeness before returning them.
    pub fn idempotents(&self) -> Result<IdempotentSet> {
        let f = &self.field;
        let l = self.l;
        let q = f.order();
        if !(q - 1).is_multiple_of(l as u32 - 1) {
            return Err(Error::IdempotentPrecondition { l, q });
        }
        let varsigma = f.primitive_power(((q - 1) / (l as u32 - 1)) as i64);
        let inv = f.inv(f.from_int(l as i64 - 1))?;

        let mut gammas = Vec::with_capacity(l);
        let mut g1 = vec![Felt::ZERO; l];
        g1[0] = Felt::ONE;
        g1[l - 1] = f.sub(g1[l - 1], Felt::ONE);
        gammas.push(RlElement { coeffs: g1 });
        for j in 0..(l - 1) {
            let root = f.pow(varsigma, j as i64)?;
            let mut c = vec![Felt::ZERO; l];
            for (i, ci) in c.iter_mut().enumerate().take(l - 1).skip(1) {
                *ci = f.mul(inv, f.pow(root, i as i64)?);
            }
            c[l - 1] = inv;
            gammas.push(RlElement { coeffs: c });
        }

        let set = IdempotentSet { gammas, varsigma };
        for (i, gi) in set.gammas.iter().enumerate() {
            for (j, gj) in set.gammas.iter().enumerate() {
                let prod = CoeffRing::mul(self, gi, gj);
                let want = if i == j { gi.clone() } else { self.zero() };
                if prod != want {
                    return Err(Error::Structural(format!(
                        "gamma_{} gamma_{} is not {}",
                        i + 1,
                        j + 1,
                        if i == j { "idempotent" } else { "zero" }
                    )));
                }
            }
        }
        let total = set.gammas.iter().fold(self.zero(), |acc, g| CoeffRing::add(self, &acc, g));
        if total != self.one() {
            return Err(Error::Structural("idempotents do not sum to 1".into()));
        }
        Ok(set)
    }

    /// Components `r_i` with `r = sum gamma_i r_i`, read off from `gamma_i r = r_i gamma_i`.
    pub fn crt_decompose(&self, set: &IdempotentSet, r: &RlElement) -> Result<Vec<Felt>> {
        self.check(r)?;
        if set.len() != self.l {
            return Err(Error::Mismatch("idempotent set built for another l".into()));
        }
        set.gammas
            .iter()
            .map(|g| {
                let gr = CoeffRing::mul(self, g, r);
                let j = g
                    .coeffs
                    .iter()
                    .position(|c| !c.is_zero())
                    .ok_or_else(|| Error::Structural("zero idempotent".into()))?;
                self.field.div(gr.coeffs[j], g.coeffs[j])
            })
            .collect()
    }

    pub fn crt_compose(&self, set: &IdempotentSet, components: &[Felt]) -> Result<RlElement> {
        if components.len() != set.len() || set.len() != self.l {
            return Err(Error::Mismatch(format!(
                "need {} components, got {}",
                self.l,
                components.len()
            )));
        }
        Ok(set.gammas.iter().zip(components).fold(self.zero(), |acc, (g, &c)| {
            CoeffRing::add(self, &acc, &self.scale(c, g))
        }))
    }

    pub fn scale(&self, c: Felt, r: &RlElement) -> RlElement {
        RlElement { coeffs: r.coeffs.iter().map(|&x| self.field.mul(c, x)).collect() }
    }

    /// Whether `sigma(gamma_i) = gamma_i` for every idempotent.
    pub fn sigma_fixes_idempotents(&self, aut: FrobeniusAut, set: &IdempotentSet) -> bool {
        self.first_moved_idempotent(aut, set).is_none()
    }

    /// 1-based index of the first idempotent moved by `sigma`.
    pub fn first_moved_idempotent(&self, aut: FrobeniusAut, set: &IdempotentSet) -> Option<usize> {
        set.gammas.iter().position(|g| self.sigma(aut, g) != *g).map(|i| i + 1)
    }

    // Solves r * s = 1 by Gaussian elimination on the multiplication-by-r matrix.
    fn solve_inverse(&self, r: &RlElement) -> Option<RlElement> {
        let f = &self.field;
        let l = self.l;
        // column j = r * v^j
        let cols: Vec<Vec<Felt>> =
            (0..l).map(|j| CoeffRing::mul(self, r, &self.v_power(j)).coeffs).collect();
        let mut a: Vec<Vec<Felt>> = (0..l)
            .map(|i| {
                let mut row: Vec<Felt> = (0..l).map(|j| cols[j][i]).collect();
                row.push(if i == 0 { Felt::ONE } else { Felt::ZERO });
                row
            })
            .collect();
        for col in 0..l {
            let piv = (col..l).find(|&i| !a[i][col].is_zero())?;
            a.swap(col, piv);
            let inv = f.inv(a[col][col]).ok()?;
            for x in a[col].iter_mut() {
                *x = f.mul(inv, *x);
            }
            for i in 0..l {
                if i != col && !a[i][col].is_zero() {
                    let factor = a[i][col];
                    for j in 0..=l {
                        let d = f.mul(factor, a[col][j]);
                        a[i][j] = f.sub(a[i][j], d);
                    }
                }
            }
        }
        Some(RlElement { coeffs: a.iter().map(|row| row[l]).collect() })
    }
}

impl CoeffRing for RlRing {
    type Elem = RlElement;

    fn zero(&self) -> RlElement {
        RlElement { coeffs: vec![Felt::ZERO; self.l] }
    }

    fn one(&self) -> RlElement {
        let mut coeffs = vec![Felt::ZERO; self.l];
        coeffs[0] = Felt::ONE;
        RlElement { coeffs }
    }

    fn add(&self, a: &RlElement, b: &RlElement) -> RlElement {
        RlElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.field.add(x, y)).collect(),
        }
    }

    fn neg(&self, a: &RlElement) -> RlElement {
        RlElement { coeffs: a.coeffs.iter().map(|&x| self.field.neg(x)).collect() }
    }

    fn mul(&self, a: &RlElement, b: &RlElement) -> RlElement {
        let f = &self.field;
        let l = self.l;
        let mut full = vec![Felt::ZERO; 2 * l - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                full[i + j] = f.add(full[i + j], f.mul(x, y));
            }
        }
        // v^k = v^{k-(l-1)} for k >= l
        for k in (l..full.len()).rev() {
            let c = full[k];
            full[k - (l - 1)] = f.add(full[k - (l - 1)], c);
        }
        full.truncate(l);
        RlElement { coeffs: full }
    }

    fn inverse(&self, a: &RlElement) -> Option<RlElement> {
        self.solve_inverse(a)
    }

    fn twist(&self, aut: FrobeniusAut, a: &RlElement) -> RlElement {
        self.sigma(aut, a)
    }

    fn scalar(&self, c: Felt) -> RlElement {
        let mut coeffs = vec![Felt::ZERO; self.l];
        coeffs[0] = c;
        RlElement { coeffs }
    }

    fn field(&self) -> &GaloisField {
        &self.field
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.l == other.l && self.field == other.field
    }

    fn contains(&self, a: &RlElement) -> bool {
        a.coeffs.len() == self.l && a.coeffs.iter().all(|c| self.field.contains(c))
    }
}
