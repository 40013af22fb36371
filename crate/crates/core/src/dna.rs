//! Nucleotides as elements of F_4: `1 -> A`, `t^2 -> T`, `0 -> G`, `t -> C`.
//! Watson-Crick complement is addition of `t`.

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::codec::code::{LinearCode, SkewCyclicCode};
use crate::error::{Error, Result};
use crate::galois::{Felt, GaloisField};
use crate::skew::{OreRing, SkewPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    A,
    C,
    G,
    T,
}

impl Base {
    pub fn complement(self) -> Base {
        match self {
            Base::A => Base::T,
            Base::T => Base::A,
            Base::C => Base::G,
            Base::G => Base::C,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::C => 'C',
            Base::G => 'G',
            Base::T => 'T',
        }
    }
}

impl TryFrom<char> for Base {
    type Error = Error;

    fn try_from(c: char) -> Result<Base> {
        match c {
            'A' => Ok(Base::A),
            'C' => Ok(Base::C),
            'G' => Ok(Base::G),
            'T' => Ok(Base::T),
            other => Err(Error::InvalidBase(other)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DnaWord(Vec<Base>);

impl DnaWord {
    pub fn bases(&self) -> &[Base] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn complement(&self) -> DnaWord {
        DnaWord(self.0.iter().map(|b| b.complement()).collect())
    }

    pub fn reverse(&self) -> DnaWord {
        DnaWord(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for DnaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|b| write!(f, "{}", b.as_char()))
    }
}

impl FromStr for DnaWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<DnaWord> {
        s.chars().map(Base::try_from).collect::<Result<_>>().map(DnaWord)
    }
}

fn require_f4(field: &GaloisField) -> Result<()> {
    if field.order() != 4 {
        return Err(Error::NotF4(field.order()));
    }
    Ok(())
}

pub fn f4_to_dna(field: &GaloisField, v: &[Felt]) -> Result<DnaWord> {
    require_f4(field)?;
    let t = field.generator();
    let t2 = field.mul(t, t);
    v.iter()
        .map(|&a| match a {
            a if a.is_zero() => Ok(Base::G),
            a if a == Felt::ONE => Ok(Base::A),
            a if a == t => Ok(Base::C),
            a if a == t2 => Ok(Base::T),
            other => Err(Error::Mismatch(format!("{other:?} is not an element of F_4"))),
        })
        .collect::<Result<_>>()
        .map(DnaWord)
}

pub fn dna_to_f4(field: &GaloisField, w: &DnaWord) -> Result<Vec<Felt>> {
    require_f4(field)?;
    let t = field.generator();
    Ok(w.0
        .iter()
        .map(|b| match b {
            Base::G => Felt::ZERO,
            Base::A => Felt::ONE,
            Base::C => t,
            Base::T => field.mul(t, t),
        })
        .collect())
}

/// `c + t(1, ..., 1)`.
pub fn complement_vec(field: &GaloisField, v: &[Felt]) -> Result<Vec<Felt>> {
    require_f4(field)?;
    let t = field.generator();
    Ok(v.iter().map(|&a| field.add(a, t)).collect())
}

/// `a^r + t(1 + x + ... + x^n)`.
pub fn reverse_complement_poly(
    ring: &OreRing<GaloisField>,
    a: &SkewPoly<Felt>,
    n: usize,
) -> Result<SkewPoly<Felt>> {
    require_f4(ring.base())?;
    let rev = ring.reverse_poly(a, n)?;
    Ok(ring.add(&rev, &ring.scale_left(&ring.base().generator(), &ring.all_one_poly(n))))
}

/// `g_i = g_{m-i}` for all `i`.
pub fn is_palindromic(g: &SkewPoly<Felt>) -> bool {
    let c = g.coeffs();
    let m = c.len().saturating_sub(1);
    !c.is_empty() && (0..=m).all(|i| c[i] == c[m - i])
}

/// `g_i = theta(g_{m-i}) - delta(g_{m-i+1})` for `i = 1..m`; indices beyond `m` read as 0.
pub fn is_td_palindromic(ring: &OreRing<GaloisField>, g: &SkewPoly<Felt>) -> bool {
    let Some(m) = g.degree() else { return false };
    let f = ring.base();
    let at = |j: usize| g.coeff(j).copied().unwrap_or(Felt::ZERO);
    (1..=m).all(|i| at(i) == f.sub(ring.sigma(&at(m - i)), ring.delta(&at(m - i + 1))))
}

/// Whether the reversal of every generator row is a codeword.
pub fn is_reversible(code: &LinearCode) -> bool {
    code.generator().iter().all(|r| {
        let rev: Vec<Felt> = r.iter().rev().copied().collect();
        code.contains(&rev)
    })
}

/// Whether the all-`t` word is a codeword.
pub fn is_complement_closed(code: &LinearCode) -> Result<bool> {
    require_f4(code.field())?;
    Ok(code.contains(&vec![code.field().generator(); code.n()]))
}

pub fn is_dna_code(code: &LinearCode) -> Result<bool> {
    Ok(is_reversible(code) && is_complement_closed(code)?)
}

/// Reversal closure checked on every codeword.
pub fn is_reversible_exhaustive(code: &LinearCode, budget: u64) -> Result<bool> {
    if code.size() > budget {
        return Err(Error::BudgetExhausted { spent: budget });
    }
    Ok(code.codewords().all(|c| {
        let rev: Vec<Felt> = c.iter().rev().copied().collect();
        code.contains(&rev)
    }))
}

/// Reverse-complement closure checked on every codeword.
pub fn is_rc_closed_exhaustive(code: &LinearCode, budget: u64) -> Result<bool> {
    require_f4(code.field())?;
    if code.size() > budget {
        return Err(Error::BudgetExhausted { spent: budget });
    }
    let f = code.field();
    Ok(code.codewords().all(|c| {
        let rc: Vec<Felt> = c.iter().rev().map(|&a| f.add(a, f.generator())).collect();
        code.contains(&rc)
    }))
}

/// Which sufficient condition for reversibility applies and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversibilityCertificate {
    /// `"palindromic"` for odd degree, `"td-palindromic"` for even degree,
    /// `None` when `n` is odd.
    pub condition: Option<&'static str>,
    pub symmetric: bool,
    /// `delta(g) in C`, or `x g^r in C`.
    pub side_condition: bool,
    pub reversible: bool,
}

impl ReversibilityCertificate {
    pub fn hypotheses_hold(&self) -> bool {
        self.condition.is_some() && self.symmetric && self.side_condition
    }
}

pub fn reversibility_certificate(code: &SkewCyclicCode) -> ReversibilityCertificate {
    let ring = code.ring();
    let g = code.generator_poly();
    let n = code.n();
    let m = g.degree().unwrap_or(0);
    let lin = code.code();
    let reversible = is_reversible(lin);
    if n % 2 == 1 {
        return ReversibilityCertificate { condition: None, symmetric: false, side_condition: false, reversible };
    }
    if m % 2 == 1 {
        let dg = ring.reduce_mod_xn_minus_one(&ring.delta_poly(g), n);
        ReversibilityCertificate {
            condition: Some("palindromic"),
            symmetric: is_palindromic(g),
            side_condition: lin.contains(&dg),
            reversible,
        }
    } else {
        let rev = ring.reverse_poly(g, m).expect("window equals degree");
        let xr = ring.reduce_mod_xn_minus_one(&ring.mul_x(&rev), n);
        ReversibilityCertificate {
            condition: Some("td-palindromic"),
            symmetric: is_td_palindromic(ring, g),
            side_condition: lin.contains(&xr),
            reversible,
        }
    }
}

/// All codewords as sorted DNA words with an order-independent digest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnaTable {
    pub words: Vec<String>,
    /// Hex SHA-256 of the sorted words joined by `\n`.
    pub digest: String,
}

pub fn set_digest<S: AsRef<str>>(words: &[S]) -> String {
    let mut sorted: Vec<&str> = words.iter().map(|w| w.as_ref()).collect();
    sorted.sort_unstable();
    hex::encode(Sha256::digest(sorted.join("\n").as_bytes()))
}

pub fn emit_dna_table(code: &LinearCode, budget: u64) -> Result<DnaTable> {
    require_f4(code.field())?;
    if code.size() > budget {
        return Err(Error::BudgetExhausted { spent: budget });
    }
    let mut words = code
        .codewords()
        .map(|c| f4_to_dna(code.field(), &c).map(|w| w.to_string()))
        .collect::<Result<Vec<_>>>()?;
    words.sort();
    let digest = set_digest(&words);
    Ok(DnaTable { words, digest })
}

/// `>cw<i>` headers, one sequence per record.
pub fn format_fasta<S: AsRef<str>>(words: &[S]) -> String {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| format!(">cw{i}\n{}\n", w.as_ref()))
        .collect()
}
