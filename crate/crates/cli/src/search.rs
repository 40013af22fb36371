//! Divisor and code search with a best-`(k, d)` frontier and resumable cursors.
//!
//! The cursor `a:d:i` names the alpha index, the degree and the candidate index
//! where the scan stopped. For `l > 1` the divisor lists are collected first and
//! the cursor `a:0:i` then counts generator tuples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use skewcodes::codec::{
    candidate_matrices, classify, code_from_generator, gray_image, min_distance, rl_code_build, GrayCandidate,
    LinearCode,
};
use skewcodes::notation::format_canonical;
use skewcodes::{FieldOre, FieldPoly, GaloisField};

use crate::config::Config;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cursor {
    pub alpha: usize,
    pub degree: usize,
    pub index: u64,
}

impl fmt::Display for Cursor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.alpha, self.degree, self.index)
    }
}

impl FromStr for Cursor {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [a, d, i] = parts.as_slice() else {
            bail!("cursor must look like alpha:degree:index, got `{s}`");
        };
        Ok(Cursor {
            alpha: a.parse().context("cursor alpha index")?,
            degree: d.parse().context("cursor degree")?,
            index: i.parse().context("cursor candidate index")?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub q: u32,
    pub frobenius: u32,
    pub n: usize,
    pub l: usize,
    pub degrees: (usize, usize),
    pub alphas: Vec<String>,
    /// Keep only codes with at least this distance.
    pub target_d: Option<usize>,
    /// Candidate indices (and, for `l > 1`, generator tuples) to examine in this run.
    pub budget: u64,
    pub resume: Option<Cursor>,
    /// Append the enumerated 2x2 family to the identity Gray matrix.
    pub gray_family: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierEntry {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    pub alpha: String,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gray: Option<String>,
    /// Some other entry has `k' >= k` and `d' >= d`, one strictly.
    pub dominated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub q: u32,
    pub modulus: String,
    pub n: usize,
    pub l: usize,
    pub degrees: (usize, usize),
    pub alphas: Vec<String>,
    pub examined: u64,
    pub divisors: usize,
    pub codes: usize,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub next_cursor: Option<String>,
    pub frontier: Vec<FrontierEntry>,
}

struct Frontier {
    best: BTreeMap<usize, FrontierEntry>,
    target: Option<usize>,
}

impl Frontier {
    fn offer(&mut self, e: FrontierEntry) {
        if self.target.is_some_and(|t| e.d < t) {
            return;
        }
        let better = match self.best.get(&e.k) {
            None => true,
            Some(cur) => (e.d, e.d_exact) > (cur.d, cur.d_exact),
        };
        if better {
            self.best.insert(e.k, e);
        }
    }

    fn finish(self) -> Vec<FrontierEntry> {
        let mut out: Vec<FrontierEntry> = self.best.into_values().rev().collect();
        let keys: Vec<(usize, usize)> = out.iter().map(|e| (e.k, e.d)).collect();
        for e in &mut out {
            e.dominated = keys.iter().any(|&(k, d)| k >= e.k && d >= e.d && (k, d) != (e.k, e.d));
        }
        out
    }
}

pub fn search(cfg: &Config, p: &SearchParams) -> Result<SearchReport> {
    if p.l == 0 {
        bail!("l must be at least 1");
    }
    if p.alphas.is_empty() {
        bail!("at least one alpha is required");
    }
    let field = cfg.field(p.q)?;
    let alphas = p
        .alphas
        .iter()
        .map(|a| field.parse_element(a).with_context(|| format!("alpha `{a}`")))
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = (p.degrees.0.max(1), p.degrees.1.min(p.n));
    let mut report = SearchReport {
        q: p.q,
        modulus: field.modulus_string(),
        n: p.n,
        l: p.l,
        degrees: p.degrees,
        alphas: p.alphas.clone(),
        examined: 0,
        divisors: 0,
        codes: 0,
        complete: true,
        next_cursor: None,
        frontier: Vec::new(),
    };
    let mut frontier = Frontier { best: BTreeMap::new(), target: p.target_d };
    let start = p.resume.unwrap_or(Cursor { alpha: 0, degree: if p.l == 1 { lo } else { 0 }, index: 0 });
    let mut budget = p.budget;

    for (ai, &alpha) in alphas.iter().enumerate().skip(start.alpha) {
        let ring = FieldOre::new(field.clone(), field.frobenius(p.frobenius), alpha);
        let token = &p.alphas[ai];
        if p.l == 1 {
            let first_degree = if ai == start.alpha { start.degree.max(lo) } else { lo };
            for d in first_degree..=hi {
                let from = if ai == start.alpha && d == start.degree { start.index } else { 0 };
                let scan = ring.scan_right_divisors(p.n, d, from, budget);
                let spent = scan.next_cursor - from.min(scan.next_cursor);
                report.examined += spent;
                budget -= spent.min(budget);
                for g in &scan.divisors {
                    report.divisors += 1;
                    let code = code_from_generator(&ring, g, p.n)?.into_code();
                    report.codes += 1;
                    offer(cfg, &mut frontier, &code, token, vec![format_canonical(&field, g.coeffs())], None)?;
                }
                if !scan.complete {
                    report.complete = false;
                    report.next_cursor = Some(Cursor { alpha: ai, degree: d, index: scan.next_cursor }.to_string());
                    report.frontier = frontier.finish();
                    return Ok(report);
                }
            }
        } else {
            let mut pool: Vec<FieldPoly> = Vec::new();
            for d in lo..=hi {
                let scan = ring.scan_right_divisors(p.n, d, 0, u64::MAX);
                report.examined += scan.next_cursor;
                pool.extend(scan.divisors);
            }
            report.divisors += pool.len();
            let grays = gray_list(&field, p.l, p.gray_family);
            let combos = (pool.len() as u64).checked_pow(p.l as u32).context("too many generator tuples")?;
            let from = if ai == start.alpha { start.index } else { 0 };
            for idx in from..combos {
                if budget == 0 {
                    report.complete = false;
                    report.next_cursor = Some(Cursor { alpha: ai, degree: 0, index: idx }.to_string());
                    report.frontier = frontier.finish();
                    return Ok(report);
                }
                budget -= 1;
                let tuple = tuple_at(&pool, p.l, idx);
                let rl = rl_code_build(&ring, p.l, &tuple, p.n)?;
                let gens: Vec<String> = tuple.iter().map(|g| format_canonical(&field, g.coeffs())).collect();
                for cand in &grays {
                    let image = gray_image(&rl, &cand.matrix)?;
                    report.codes += 1;
                    offer(cfg, &mut frontier, &image, token, gens.clone(), Some(cand.label.clone()))?;
                }
            }
        }
    }
    report.frontier = frontier.finish();
    Ok(report)
}

/// Best entry per `k` over several partial runs.
pub fn merge_frontiers(target_d: Option<usize>, entries: impl IntoIterator<Item = FrontierEntry>) -> Vec<FrontierEntry> {
    let mut f = Frontier { best: BTreeMap::new(), target: target_d };
    for e in entries {
        f.offer(e);
    }
    f.finish()
}

fn gray_list(field: &GaloisField, l: usize, family: bool) -> Vec<GrayCandidate> {
    let all = candidate_matrices(field, l);
    if family {
        all
    } else {
        all.into_iter().take(1).collect()
    }
}

fn tuple_at(pool: &[FieldPoly], l: usize, mut idx: u64) -> Vec<FieldPoly> {
    let m = pool.len() as u64;
    let mut out = vec![FieldPoly::zero(); l];
    for slot in out.iter_mut().rev() {
        *slot = pool[(idx % m) as usize].clone();
        idx /= m;
    }
    out
}

fn offer(
    cfg: &Config,
    frontier: &mut Frontier,
    code: &LinearCode,
    alpha: &str,
    generators: Vec<String>,
    gray: Option<String>,
) -> Result<()> {
    if code.k() == 0 {
        return Ok(());
    }
    let dist = min_distance(code, None, cfg.distance_budget)?;
    let class = if dist.is_exact() { classify(code.n(), code.k(), &dist).ok().map(|c| c.label().to_string()) } else { None };
    frontier.offer(FrontierEntry {
        n: code.n(),
        k: code.k(),
        d: dist.d,
        d_exact: dist.is_exact(),
        class,
        alpha: alpha.to_string(),
        generators,
        gray,
        dominated: false,
    });
    Ok(())
}
