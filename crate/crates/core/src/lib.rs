//! Skew polynomial rings with derivation over finite fields and the ring
//! `R_l = F_q[v]/(v^l - v)`, and the linear, Gray-image and DNA codes built
//! from their right divisors of `x^n - 1`.

pub mod algebra;
pub mod codec;
pub mod dna;
pub mod error;
pub mod galois;
pub mod notation;
pub mod ring_rl;
pub mod skew;

pub use algebra::CoeffRing;
pub use error::{Error, Result};
pub use galois::{Felt, FrobeniusAut, GaloisField};
pub use ring_rl::{IdempotentSet, RlElement, RlRing};
pub use skew::{DivisorScan, InnerDerivation, OreRing, SkewPoly};

/// Skew polynomial ring over a field.
pub type FieldOre = OreRing<GaloisField>;
/// Skew polynomial ring over `R_l`.
pub type RlOre = OreRing<RlRing>;
pub type FieldPoly = SkewPoly<Felt>;
pub type RlPoly = SkewPoly<RlElement>;
