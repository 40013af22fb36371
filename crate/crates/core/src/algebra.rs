//! The coefficient-ring abstraction shared by fields and `R_l`.

use std::fmt::Debug;

use crate::galois::{Felt, FrobeniusAut, GaloisField};

/// A finite commutative ring that can carry skew polynomials: ring operations,
/// unit inversion, and the coefficientwise Frobenius twist.
pub trait CoeffRing: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for non-units.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The automorphism induced by `aut` (coefficientwise on `R_l`).
    fn twist(&self, aut: FrobeniusAut, a: &Self::Elem) -> Self::Elem;
    /// Embeds a field scalar.
    fn scalar(&self, c: Felt) -> Self::Elem;
    fn field(&self) -> &GaloisField;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Whether two ring handles describe the same ring.
    fn same_ring(&self, other: &Self) -> bool;

    /// Whether `a` is a well-formed element of this ring.
    fn contains(&self, a: &Self::Elem) -> bool;
}

impl CoeffRing for GaloisField {
    type Elem = Felt;

    fn zero(&self) -> Felt {
        Felt::ZERO
    }
    fn one(&self) -> Felt {
        Felt::ONE
    }
    fn add(&self, a: &Felt, b: &Felt) -> Felt {
        GaloisField::add(self, *a, *b)
    }
    fn neg(&self, a: &Felt) -> Felt {
        GaloisField::neg(self, *a)
    }
    fn mul(&self, a: &Felt, b: &Felt) -> Felt {
        GaloisField::mul(self, *a, *b)
    }
    fn inverse(&self, a: &Felt) -> Option<Felt> {
        self.inv(*a).ok()
    }
    fn twist(&self, aut: FrobeniusAut, a: &Felt) -> Felt {
        self.frobenius_apply(aut, *a)
    }
    fn scalar(&self, c: Felt) -> Felt {
        c
    }
    fn field(&self) -> &GaloisField {
        self
    }
    fn is_zero(&self, a: &Felt) -> bool {
        a.is_zero()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self == other
    }
    fn contains(&self, a: &Felt) -> bool {
        (a.code() as u32) < self.order()
    }
}
