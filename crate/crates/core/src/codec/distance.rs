//! Exact minimum distance as the size of the smallest linearly dependent
//! set of parity-check columns.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::codec::code::LinearCode;
use crate::codec::linalg;
use crate::error::{Error, Result};
use crate::galois::{Felt, GaloisField};

/// Codes with at most this many codewords are cross-checked by enumeration.
pub const ENUMERATION_CROSSCHECK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceStatus {
    Exact,
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    /// The distance when exact, otherwise a certified lower bound.
    pub d: usize,
    pub status: DistanceStatus,
    /// A codeword of weight `d` when exact.
    pub witness: Option<Vec<Felt>>,
    /// Search nodes visited.
    pub nodes: u64,
}

impl DistanceResult {
    pub fn is_exact(&self) -> bool {
        self.status == DistanceStatus::Exact
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Mds,
    AlmostMds,
    Neither,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Classification::Mds => "MDS",
            Classification::AlmostMds => "almost MDS",
            Classification::Neither => "neither",
        }
    }
}

/// MDS iff `n + 1 = k + d`; almost MDS iff `n = k + d`.
pub fn classify(n: usize, k: usize, d: &DistanceResult) -> Result<Classification> {
    if !d.is_exact() {
        return Err(Error::InvalidParameter(format!("distance is only known to be >= {}", d.d)));
    }
    Ok(if n + 1 == k + d.d {
        Classification::Mds
    } else if n == k + d.d {
        Classification::AlmostMds
    } else {
        Classification::Neither
    })
}

struct Search<'a> {
    field: &'a GaloisField,
    n: usize,
    nodes: AtomicU64,
    budget: u64,
    exhausted: AtomicBool,
}

impl Search<'_> {
    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    /// Eliminates column `u` (pivot `p`) from every later column.
    fn eliminate(&self, cols: &[(usize, Vec<Felt>)], u: &[Felt]) -> Option<Vec<(usize, Vec<Felt>)>> {
        let p = u.iter().position(|c| !c.is_zero())?;
        let inv = self.field.inv(u[p]).unwrap();
        Some(
            cols.iter()
                .map(|(j, v)| {
                    let f = self.field.mul(v[p], inv);
                    if f.is_zero() {
                        return (*j, v.clone());
                    }
                    let w = v.iter().zip(u).map(|(&a, &b)| self.field.sub(a, self.field.mul(f, b))).collect();
                    (*j, w)
                })
                .collect(),
        )
    }

    /// Extends `chosen` to `target` columns; returns a dependent set of size `target + 1`.
    fn dfs(&self, chosen: &mut Vec<usize>, rest: &[(usize, Vec<Felt>)], target: usize) -> Option<Vec<usize>> {
        if chosen.len() == target {
            return rest.iter().find(|(_, v)| linalg::is_zero_vec(v)).map(|(j, _)| {
                let mut s = chosen.clone();
                s.push(*j);
                s
            });
        }
        let need = target - chosen.len();
        // one more column beyond the chosen ones must remain
        for idx in 0..rest.len().saturating_sub(need) {
            if !self.tick() {
                return None;
            }
            let (i, u) = &rest[idx];
            let Some(next) = self.eliminate(&rest[idx + 1..], u) else {
                // a smaller dependent set; earlier rounds rule this out
                let mut s = chosen.clone();
                s.push(*i);
                return Some(s);
            };
            chosen.push(*i);
            let found = self.dfs(chosen, &next, target);
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn witness_on(code: &LinearCode, support: &[usize]) -> Vec<Felt> {
    let field = code.field();
    let sub: Vec<Vec<Felt>> =
        code.parity_check().iter().map(|row| support.iter().map(|&j| row[j]).collect()).collect();
    let sub = if sub.is_empty() { vec![vec![Felt::ZERO; support.len()]] } else { sub };
    let ns = linalg::null_space(field, &sub, support.len());
    let mut c = vec![Felt::ZERO; code.n()];
    for (&j, &v) in support.iter().zip(&ns[0]) {
        c[j] = v;
    }
    c
}

/// Smallest `w` such that some `w` columns of `H` are dependent. Round `w`
/// scans the `(w-1)`-subsets; a round cut short by `budget` or `max_w`
/// yields an `AtLeast` bound.
pub fn min_distance(code: &LinearCode, max_w: Option<usize>, budget: u64) -> Result<DistanceResult> {
    if code.k() == 0 {
        return Err(Error::InvalidParameter("the zero code has no minimum distance".into()));
    }
    let n = code.n();
    let r = n - code.k();
    let h = code.parity_check();
    let cols: Vec<(usize, Vec<Felt>)> = (0..n).map(|j| (j, h.iter().map(|row| row[j]).collect())).collect();
    let search = Search {
        field: code.field(),
        n,
        nodes: AtomicU64::new(0),
        budget,
        exhausted: AtomicBool::new(false),
    };
    let limit = max_w.unwrap_or(usize::MAX).min(r + 1);
    let mut result = None;
    for w in 1..=limit {
        let found = if w == 1 {
            cols.iter().find(|(_, v)| linalg::is_zero_vec(v)).map(|(j, _)| vec![*j])
        } else {
            let target = w - 1;
            (0..search.n.saturating_sub(target)).into_par_iter().find_map_first(|idx| {
                if !search.tick() {
                    return None;
                }
                let (i, u) = &cols[idx];
                let rest = search.eliminate(&cols[idx + 1..], u)?;
                search.dfs(&mut vec![*i], &rest, target)
            })
        };
        if let Some(support) = found {
            let c = witness_on(code, &support);
            if !code.contains(&c) || linalg::weight(&c) != support.len() {
                return Err(Error::Structural("distance witness failed verification".into()));
            }
            result = Some(DistanceResult {
                d: support.len(),
                status: DistanceStatus::Exact,
                witness: Some(c),
                nodes: search.nodes.load(Ordering::Relaxed),
            });
            break;
        }
        if search.exhausted.load(Ordering::Relaxed) {
            return Ok(DistanceResult {
                d: w,
                status: DistanceStatus::AtLeast,
                witness: None,
                nodes: search.nodes.load(Ordering::Relaxed),
            });
        }
    }
    let result = result.unwrap_or(DistanceResult {
        d: limit + 1,
        status: DistanceStatus::AtLeast,
        witness: None,
        nodes: search.nodes.load(Ordering::Relaxed),
    });
    if result.is_exact() && code.size() <= ENUMERATION_CROSSCHECK {
        let oracle = enumerate_min_distance(code);
        if oracle != Some(result.d) {
            return Err(Error::Structural(format!(
                "column search gave d = {}, enumeration gave {oracle:?}",
                result.d
            )));
        }
    }
    Ok(result)
}

/// Minimum nonzero weight over all `q^k` codewords.
pub fn enumerate_min_distance(code: &LinearCode) -> Option<usize> {
    (1..code.size())
        .into_par_iter()
        .map(|i| linalg::weight(&code.codeword(i)))
        .min()
}
