//! `(sigma, delta)`-cyclic codes over `R_l` assembled from field components.

use crate::algebra::CoeffRing;
use crate::codec::code::{code_from_generator, SkewCyclicCode};
use crate::error::{Error, Result};
use crate::galois::{Felt, GaloisField};
use crate::ring_rl::{IdempotentSet, RlElement, RlRing};
use crate::skew::{OreRing, SkewPoly};

/// `C = sum gamma_i C_i` with generator `f = sum gamma_i g_i`.
#[derive(Clone, Debug)]
pub struct RlCode {
    rl: RlRing,
    idempotents: IdempotentSet,
    ring: OreRing<RlRing>,
    components: Vec<SkewCyclicCode>,
    generator_poly: SkewPoly<RlElement>,
    cofactor: SkewPoly<RlElement>,
    n: usize,
}

impl RlCode {
    pub fn rl(&self) -> &RlRing {
        &self.rl
    }

    pub fn idempotents(&self) -> &IdempotentSet {
        &self.idempotents
    }

    pub fn ring(&self) -> &OreRing<RlRing> {
        &self.ring
    }

    pub fn components(&self) -> &[SkewCyclicCode] {
        &self.components
    }

    pub fn generator_poly(&self) -> &SkewPoly<RlElement> {
        &self.generator_poly
    }

    /// `Q` with `Q f = x^n - 1`.
    pub fn cofactor(&self) -> &SkewPoly<RlElement> {
        &self.cofactor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &GaloisField {
        self.rl.field()
    }

    /// Dimension of the Gray image, `sum k_i`.
    pub fn total_dimension(&self) -> usize {
        self.components.iter().map(|c| c.k()).sum()
    }
}

fn combine(rl: &RlRing, set: &IdempotentSet, polys: &[SkewPoly<Felt>]) -> Vec<RlElement> {
    let len = polys.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    (0..len)
        .map(|j| {
            polys.iter().zip(set.gammas()).fold(rl.zero(), |acc, (p, g)| {
                let c = p.coeff(j).copied().unwrap_or(Felt::ZERO);
                rl.add(&acc, &rl.scale(c, g))
            })
        })
        .collect()
}

/// Builds the `R_l` code from one generator per idempotent. The derivation on
/// `R_l` uses the field multiplier of `field_ring`.
///
/// When the component degrees differ the leading coefficient of `f` is a zero
/// divisor, so divisibility is witnessed by `Q = sum gamma_i q_i` with
/// `Q f = x^n - 1` instead of by division.
pub fn rl_code_build(
    field_ring: &OreRing<GaloisField>,
    l: usize,
    generators: &[SkewPoly<Felt>],
    n: usize,
) -> Result<RlCode> {
    if generators.len() != l {
        return Err(Error::InvalidParameter(format!(
            "R_{l} needs {l} component generators, got {}",
            generators.len()
        )));
    }
    let field = field_ring.base().clone();
    let rl = RlRing::new(field.clone(), l)?;
    let set = rl.idempotents()?;
    if let Some(index) = rl.first_moved_idempotent(field_ring.theta(), &set) {
        return Err(Error::SigmaMovesIdempotent { index });
    }
    let components = generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            code_from_generator(field_ring, g, n)
                .map_err(|e| Error::Component { index: i + 1, reason: Box::new(e) })
        })
        .collect::<Result<Vec<_>>>()?;
    let cofactors = generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let (q, r) = field_ring
                .right_divide(&field_ring.x_n_minus_one(n), g)
                .map_err(|e| Error::Component { index: i + 1, reason: Box::new(e) })?;
            if !r.is_zero() {
                return Err(Error::Component { index: i + 1, reason: Box::new(Error::NotRightDivisor { n }) });
            }
            Ok(q)
        })
        .collect::<Result<Vec<_>>>()?;

    let ring = OreRing::new(rl.clone(), field_ring.theta(), rl.scalar(*field_ring.alpha()));
    let f = ring.poly(combine(&rl, &set, generators));
    let q = ring.poly(combine(&rl, &set, &cofactors));
    if ring.mul(&q, &f) != ring.x_n_minus_one(n) {
        return Err(Error::Structural("combined generator does not right-divide x^n - 1".into()));
    }
    for (g, gamma) in generators.iter().zip(set.gammas()) {
        let lhs = ring.scale_left(gamma, &f);
        let rhs = ring.poly(g.coeffs().iter().map(|&c| rl.scale(c, gamma)).collect());
        if lhs != rhs {
            return Err(Error::Structural("gamma_i f differs from gamma_i g_i".into()));
        }
    }
    Ok(RlCode { rl, idempotents: set, ring, components, generator_poly: f, cofactor: q, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_expression;

    #[test]
    fn example1_components_over_f16() {
        let f = GaloisField::with_order(16).unwrap();
        let r = OreRing::new(f.clone(), f.frobenius(1), f.generator());
        let g1 = r.poly(parse_expression(&f, "x^4 + t^13x^3 + t^7x^2 + t").unwrap());
        let g2 = r.poly(parse_expression(&f, "x^3 + t^10x^2 + t^11x + t^14").unwrap());
        let code = rl_code_build(&r, 2, &[g1, g2], 12).unwrap();
        assert_eq!(code.total_dimension(), 8 + 9);
        assert_eq!(code.generator_poly().degree(), Some(4));
        // lc f = gamma_1 is not a unit
        assert!(code.ring().right_divide(&code.ring().x_n_minus_one(12), code.generator_poly()).is_err());
    }

    #[test]
    fn x_minus_one_everywhere() {
        let f = GaloisField::with_order(25).unwrap();
        let r = OreRing::new(f.clone(), f.frobenius(1), Felt::ZERO);
        let g = r.poly(vec![f.neg(Felt::ONE), Felt::ONE]);
        let code = rl_code_build(&r, 3, &[g.clone(), g.clone(), g], 6).unwrap();
        let rl = code.rl();
        assert_eq!(code.generator_poly().coeffs(), &[rl.neg(&rl.one()), rl.one()]);
        // equal degrees make lc f a unit, so plain division also applies
        let (_, rem) = code.ring().right_divide(&code.ring().x_n_minus_one(6), code.generator_poly()).unwrap();
        assert!(rem.is_zero());
    }

    #[test]
    fn example2_components_over_f25() {
        let f = GaloisField::with_order(25).unwrap();
        let r = OreRing::new(f.clone(), f.frobenius(1), f.generator());
        let gs: Vec<_> = ["x^3 + t^7x^2 + t^22x + t^9", "x + t^11", "x + 4"]
            .iter()
            .map(|s| r.poly(parse_expression(&f, s).unwrap()))
            .collect();
        let code = rl_code_build(&r, 3, &gs, 15).unwrap();
        assert_eq!(code.total_dimension(), 12 + 14 + 14);
    }

    #[test]
    fn failing_component_is_named() {
        let f = GaloisField::with_order(25).unwrap();
        let r = OreRing::new(f.clone(), f.frobenius(1), f.generator());
        let good = r.poly(parse_expression(&f, "x + 4").unwrap());
        let bad = r.poly(parse_expression(&f, "x^2 + t").unwrap());
        match rl_code_build(&r, 2, &[good, bad], 15) {
            Err(Error::Component { index: 2, reason }) => {
                assert!(matches!(*reason, Error::NotRightDivisor { n: 15 }))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn moved_idempotent_refused() {
        let f = GaloisField::with_order(16).unwrap();
        let r = OreRing::new(f.clone(), f.frobenius(1), Felt::ZERO);
        let g = r.poly(vec![Felt::ONE, Felt::ONE]);
        let gs = vec![g; 4];
        assert!(matches!(rl_code_build(&r, 4, &gs, 4), Err(Error::SigmaMovesIdempotent { index: 3 })));
    }
}
