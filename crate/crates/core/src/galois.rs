//! Finite fields `F_{p^m}` in polynomial basis over a primitive generator `t`.
//!
//! Elements are stored as their coefficient vector packed into a base-`p`
//! integer (the "code"): `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` for the element
//! `c_0 + c_1 t + ... + c_{m-1} t^{m-1}`. Multiplication goes through discrete
//! log tables; addition in odd characteristic goes through Zech logarithms.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

/// An element of a [`GaloisField`], identified by its packed polynomial-basis code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Felt(u16);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    /// Packed base-`p` coefficient code.
    pub fn code(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `a -> a^{p^e}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusAut {
    exponent: u32,
    order: u32,
}

impl FrobeniusAut {
    pub fn exponent(self) -> u32 {
        self.exponent
    }

    /// Order of the automorphism, `m / gcd(m, e)`.
    pub fn order(self) -> u32 {
        self.order
    }

    pub fn is_identity(self) -> bool {
        self.exponent == 0
    }
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg: Vec<u16>,
}

/// A concrete finite field with its modulus and precomputed log tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct GaloisField {
    data: Arc<FieldData>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.data.p)
            .field("m", &self.data.m)
            .field("modulus", &self.data.modulus)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.p == other.data.p && self.data.modulus == other.data.modulus)
    }
}

impl Eq for GaloisField {}

/// Built-in moduli (ascending coefficients, monic) for the small fields the
/// tables use. Override through configuration for other representations.
pub fn default_modulus(q: u32) -> Option<Vec<u32>> {
    let m = match q {
        4 => vec![1, 1, 1],
        9 => vec![2, 2, 1],
        16 => vec![1, 1, 0, 0, 1],
        25 => vec![2, 4, 1],
        49 => vec![3, 6, 1],
        _ => return None,
    };
    Some(m)
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// Dense polynomials over F_p, ascending, used only to vet the modulus.
fn poly_rem_fp(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv_lead = inv_mod(b[db], p);
    while r.len() > db && !r.is_empty() {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let f = lead * inv_lead % p;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - f * bi % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("nonzero residue mod prime")
}

fn is_irreducible_fp(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        // every monic polynomial of degree d
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                f.push((k % p as u64) as u32);
                k /= p as u64;
            }
            f.push(1);
            if poly_rem_fp(modulus, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds `F_{p^m}` from an explicit modulus, or from [`default_modulus`]
    /// when `modulus` is `None`.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER as u64).ok_or(
            Error::UnsupportedField { q: (p as u64).saturating_pow(m) },
        )? as u32;
        let modulus = match modulus {
            Some(c) => c.to_vec(),
            None => default_modulus(q).ok_or(Error::UnsupportedField { q: q as u64 })?,
        };
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(Error::BadModulus(format!(
                "expected a monic polynomial of degree {m}, got coefficients {modulus:?}"
            )));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::BadModulus(format!("coefficient {c} is not reduced mod {p}")));
        }
        if !is_irreducible_fp(&modulus, p) {
            return Err(Error::ReducibleModulus(modulus));
        }

        let mu = m as usize;
        let pack = |v: &[u32]| -> u16 {
            v.iter().rev().fold(0u32, |acc, &c| acc * p + c) as u16
        };
        let unpack = |mut code: u32| -> Vec<u32> {
            (0..mu)
                .map(|_| {
                    let c = code % p;
                    code /= p;
                    c
                })
                .collect()
        };

        let order = q - 1;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = vec![0u32; mu];
        cur[0] = 1;
        for k in 0..order {
            let code = pack(&cur);
            if log[code as usize] != NO_LOG {
                return Err(Error::NotPrimitive { order: k, expected: order });
            }
            log[code as usize] = k;
            exp.push(code);
            // multiply by t and reduce by the modulus
            let top = cur[mu - 1];
            let mut next = vec![0u32; mu];
            next[1..mu].copy_from_slice(&cur[..(mu - 1)]);
            for (i, nx) in next.iter_mut().enumerate() {
                *nx = (*nx + p * p - top * modulus[i] % p) % p;
            }
            cur = next;
        }
        if pack(&cur) != 1 {
            return Err(Error::NotPrimitive { order: 0, expected: order });
        }

        let neg: Vec<u16> = (0..q)
            .map(|c| pack(&unpack(c).iter().map(|&x| (p - x) % p).collect::<Vec<_>>()))
            .collect();
        let one = unpack(1);
        let zech: Vec<u32> = exp
            .iter()
            .map(|&e| {
                let s: Vec<u32> =
                    unpack(e as u32).iter().zip(&one).map(|(a, b)| (a + b) % p).collect();
                log[pack(&s) as usize]
            })
            .collect();

        Ok(GaloisField {
            data: Arc::new(FieldData { p, m, q, modulus, exp, log, zech, neg }),
        })
    }

    /// Builds the field of order `q` from the built-in modulus table.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::UnsupportedField { q: q as u64 })?;
        Self::new(p, m, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.data.p
    }

    pub fn degree(&self) -> u32 {
        self.data.m
    }

    pub fn order(&self) -> u32 {
        self.data.q
    }

    /// Modulus coefficients, ascending, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.data.modulus
    }

    pub fn zero(&self) -> Felt {
        Felt::ZERO
    }

    pub fn one(&self) -> Felt {
        Felt::ONE
    }

    /// All field elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.data.q).map(|c| Felt(c as u16))
    }

    pub fn from_code(&self, code: u32) -> Option<Felt> {
        (code < self.data.q).then_some(Felt(code as u16))
    }

    /// The prime-subfield element `d * 1`.
    pub fn from_int(&self, d: i64) -> Felt {
        Felt(d.rem_euclid(self.data.p as i64) as u16)
    }

    pub fn in_prime_subfield(&self, a: Felt) -> bool {
        (a.0 as u32) < self.data.p
    }

    /// `t^k` for the primitive generator `t`.
    pub fn primitive_power(&self, k: i64) -> Felt {
        let n = self.data.q as i64 - 1;
        Felt(self.data.exp[k.rem_euclid(n) as usize])
    }

    pub fn generator(&self) -> Felt {
        self.primitive_power(1)
    }

    /// Discrete log base `t`; `None` for zero.
    pub fn log(&self, a: Felt) -> Option<u32> {
        let l = self.data.log[a.0 as usize];
        (l != NO_LOG).then_some(l)
    }

    /// Polynomial-basis coordinates of `a`.
    pub fn coeffs(&self, a: Felt) -> Vec<u32> {
        let p = self.data.p;
        let mut code = a.0 as u32;
        (0..self.data.m)
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Felt> {
        let p = self.data.p;
        if coeffs.len() > self.data.m as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter(format!(
                "{coeffs:?} is not a coordinate vector over F_{p} of length {}",
                self.data.m
            )));
        }
        Ok(Felt(coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c) as u16))
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.data.p == 2 {
            return Felt(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let d = &*self.data;
        let n = d.q - 1;
        let la = d.log[a.0 as usize];
        let lb = d.log[b.0 as usize];
        let z = d.zech[((lb + n - la) % n) as usize];
        if z == NO_LOG {
            Felt::ZERO
        } else {
            Felt(d.exp[((la + z) % n) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        Felt(self.data.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.0 == 0 || b.0 == 0 {
            return Felt::ZERO;
        }
        let d = &*self.data;
        let s = d.log[a.0 as usize] + d.log[b.0 as usize];
        let n = d.q - 1;
        Felt(d.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        let l = self.log(a).ok_or(Error::DivisionByZero)?;
        let n = self.data.q - 1;
        Ok(Felt(self.data.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`; negative `k` requires `a != 0`. `0^0 = 1`.
    pub fn pow(&self, a: Felt, k: i64) -> Result<Felt> {
        match self.log(a) {
            None if k > 0 => Ok(Felt::ZERO),
            None if k == 0 => Ok(Felt::ONE),
            None => Err(Error::DivisionByZero),
            Some(l) => {
                let n = self.data.q as i64 - 1;
                Ok(self.primitive_power((l as i64 * k.rem_euclid(n)).rem_euclid(n)))
            }
        }
    }

    /// The automorphism `a -> a^{p^e}`; `e` is taken mod `m`.
    pub fn frobenius(&self, e: u32) -> FrobeniusAut {
        let m = self.data.m;
        let e = e % m;
        FrobeniusAut { exponent: e, order: m / gcd(m, e) }
    }

    #[inline]
    pub fn frobenius_apply(&self, aut: FrobeniusAut, a: Felt) -> Felt {
        if aut.exponent == 0 || a.0 == 0 {
            return a;
        }
        let d = &*self.data;
        let n = (d.q - 1) as u64;
        let mult = (d.p as u64).pow(aut.exponent) % n;
        let l = d.log[a.0 as usize] as u64;
        Felt(d.exp[(l * mult % n) as usize])
    }

    /// Applies `aut` `times` times; `times` may exceed the order.
    pub fn frobenius_iter(&self, aut: FrobeniusAut, a: Felt, times: u32) -> Felt {
        (0..times % aut.order.max(1)).fold(a, |x, _| self.frobenius_apply(aut, x))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Felt) -> Option<u32> {
        let l = self.log(a)?;
        let n = self.data.q - 1;
        Some(n / gcd(n, l))
    }

    /// Parses `0`, a prime-subfield literal `d`, `t`, or `t^k`.
    pub fn parse_element(&self, token: &str) -> Result<Felt> {
        let s = token.trim();
        let malformed = || Error::Parse(format!("malformed field element `{token}`"));
        if s.is_empty() {
            return Err(malformed());
        }
        if s.bytes().all(|b| b.is_ascii_digit()) {
            let d: u64 = s.parse().map_err(|_| malformed())?;
            if d >= self.data.p as u64 {
                return Err(Error::Parse(format!(
                    "literal {d} is not a prime-subfield digit (p = {})",
                    self.data.p
                )));
            }
            return Ok(Felt(d as u16));
        }
        if s == "t" {
            return Ok(self.generator());
        }
        if let Some(rest) = s.strip_prefix("t^") {
            let rest = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(rest);
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            let k: u64 = rest.parse().map_err(|_| malformed())?;
            let n = self.data.q as u64 - 1;
            return Ok(self.primitive_power((k % n) as i64));
        }
        Err(malformed())
    }

    /// Inverse of [`GaloisField::parse_element`]: prime-subfield elements as
    /// digits, everything else as `t` or `t^k`.
    pub fn format_element(&self, a: Felt) -> String {
        if self.in_prime_subfield(a) {
            return a.0.to_string();
        }
        match self.log(a) {
            Some(1) => "t".to_string(),
            Some(k) => format!("t^{k}"),
            None => "0".to_string(),
        }
    }

    /// `t`-power form for every element, including the prime subfield
    /// (`1 -> t^0`); useful when comparing against tables written that way.
    pub fn format_log(&self, a: Felt) -> String {
        match self.log(a) {
            None => "0".to_string(),
            Some(k) => format!("t^{k}"),
        }
    }

    /// Human-readable modulus, e.g. `t^2+6t+3`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.data.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(format!("{coef}{var}"));
        }
        terms.join("+")
    }
}
