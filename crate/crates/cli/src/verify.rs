//! Row verification: rebuild each fixture row under every candidate
//! (modulus, alpha, Gray matrix) and keep the first configuration that
//! reproduces the expected parameters.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use skewcodes::codec::{
    candidate_matrices, classify, code_from_generator, gray_image, gray_matrix_check, min_distance, rl_code_build,
    DistanceStatus, GrayCandidate, LinearCode,
};
use skewcodes::dna::{emit_dna_table, is_complement_closed, is_reversible, set_digest};
use skewcodes::notation::{parse_matrix, parse_poly};
use skewcodes::{FieldOre, FieldPoly, GaloisField};

use crate::config::Config;
use crate::fixture::{DnaExpect, Expect, Row};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAGGED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DnaComparison {
    pub computed: usize,
    pub table_entries: usize,
    /// Table entries of the wrong length or alphabet.
    pub malformed: Vec<String>,
    /// Computed words absent from the table.
    pub missing_from_table: Vec<String>,
    /// Well-formed table words that are not codewords.
    pub not_in_code: Vec<String>,
    /// Every missing word extends a distinct malformed entry.
    pub malformed_explained: bool,
    pub digest: String,
    pub table_digest: String,
}

impl DnaComparison {
    pub fn matches(&self) -> bool {
        self.not_in_code.is_empty() && self.malformed_explained
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub modulus: String,
    pub alpha: String,
    pub frobenius: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gray: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    /// Right-divisibility of `x^n - 1` by each generator.
    pub divides: Vec<bool>,
    /// Displayed cofactor times generator equals `x^n - 1`, for every pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_exact: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reversible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement_closed: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dna: Option<DnaComparison>,
    pub matches: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Attempt {
    fn new(modulus: String, alpha: &str, frobenius: u32) -> Self {
        Attempt {
            modulus,
            alpha: alpha.to_string(),
            frobenius,
            gray: None,
            beta: None,
            divides: Vec::new(),
            factorization: None,
            n: None,
            k: None,
            d: None,
            d_exact: None,
            class: None,
            reversible: None,
            complement_closed: None,
            dna: None,
            matches: false,
            error: None,
        }
    }

    pub fn all_divide(&self) -> bool {
        !self.divides.is_empty() && self.divides.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub id: String,
    pub status: Status,
    pub q: u32,
    pub l: usize,
    pub expected: Expect,
    /// Index into `attempts` of the reproducing configuration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chosen: Option<usize>,
    pub attempts: Vec<Attempt>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RowReport {
    pub fn chosen_attempt(&self) -> Option<&Attempt> {
        self.chosen.and_then(|i| self.attempts.get(i))
    }

    /// The attempt to show in summaries: the chosen one, else the last that got furthest.
    pub fn representative(&self) -> Option<&Attempt> {
        self.chosen_attempt()
            .or_else(|| self.attempts.iter().rev().find(|a| a.d.is_some()))
            .or_else(|| self.attempts.iter().rev().find(|a| a.k.is_some()))
            .or_else(|| self.attempts.last())
    }
}

/// Verifies rows in parallel; the output keeps fixture order.
pub fn verify_rows(cfg: &Config, rows: &[Row]) -> Vec<RowReport> {
    rows.par_iter().map(|r| verify_row(cfg, r)).collect()
}

pub fn verify_row(cfg: &Config, row: &Row) -> RowReport {
    let start = Instant::now();
    let mut attempts = Vec::new();
    let mut notes = Vec::new();
    let mut chosen = None;
    let mut degrees: Option<Vec<usize>> = None;

    let moduli: Vec<Option<Vec<u32>>> = if row.moduli.is_empty() {
        vec![cfg.moduli.get(&row.q).cloned()]
    } else {
        row.moduli.iter().cloned().map(Some).collect()
    };

    'outer: for modulus in &moduli {
        let field = match cfg.field_with(row.q, modulus.as_deref()) {
            Ok(f) => f,
            Err(e) => {
                notes.push(format!("modulus {modulus:?}: {e:#}"));
                continue;
            }
        };
        let gens = match parse_all(&field, &row.generators) {
            Ok(g) => g,
            Err(e) => {
                notes.push(format!("generators under {}: {e}", field.modulus_string()));
                continue;
            }
        };
        let cofactors = match parse_all(&field, &row.cofactors) {
            Ok(c) => c,
            Err(e) => {
                notes.push(format!("cofactors under {}: {e}", field.modulus_string()));
                continue;
            }
        };
        if degrees.is_none() {
            degrees = Some(gens.iter().map(|g| g.len().saturating_sub(1)).collect());
        }
        let grays = match gray_candidates(&field, row) {
            Ok(g) => g,
            Err(e) => {
                notes.push(format!("Gray matrices under {}: {e}", field.modulus_string()));
                continue;
            }
        };
        for token in &row.alpha {
            let alpha = match field.parse_element(token) {
                Ok(a) => a,
                Err(e) => {
                    notes.push(format!("alpha {token}: {e}"));
                    continue;
                }
            };
            let ring = FieldOre::new(field.clone(), field.frobenius(row.frobenius), alpha);
            let base = Attempt::new(field.modulus_string(), token, row.frobenius);
            for attempt in run_alpha(cfg, row, &ring, &gens, &cofactors, &grays, base) {
                let hit = attempt.matches;
                attempts.push(attempt);
                if hit {
                    chosen = Some(attempts.len() - 1);
                    break 'outer;
                }
            }
        }
    }

    let status = decide(row, &attempts, chosen, degrees.as_deref(), &mut notes);
    RowReport {
        id: row.id.clone(),
        status,
        q: row.q,
        l: row.l,
        expected: row.expect.clone(),
        chosen,
        attempts,
        notes,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    }
}

fn parse_all(field: &GaloisField, texts: &[String]) -> skewcodes::Result<Vec<Vec<skewcodes::Felt>>> {
    texts.iter().map(|t| parse_poly(field, t)).collect()
}

fn gray_candidates(field: &GaloisField, row: &Row) -> anyhow::Result<Vec<GrayCandidate>> {
    if row.l == 1 {
        return Ok(Vec::new());
    }
    let mut out: Vec<GrayCandidate> = Vec::new();
    for text in &row.gray {
        let m = gray_matrix_check(field, parse_matrix(field, text)?, row.l)?;
        out.push(GrayCandidate { label: text.replace(' ', ""), matrix: m });
    }
    if row.gray_family || out.is_empty() {
        for c in candidate_matrices(field, row.l) {
            if !out.iter().any(|o| o.matrix == c.matrix) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn run_alpha(
    cfg: &Config,
    row: &Row,
    ring: &FieldOre,
    gens: &[Vec<skewcodes::Felt>],
    cofactors: &[Vec<skewcodes::Felt>],
    grays: &[GrayCandidate],
    mut base: Attempt,
) -> Vec<Attempt> {
    let field = ring.base();
    let polys: Vec<FieldPoly> = gens.iter().map(|g| ring.poly(g.clone())).collect();
    base.divides = polys.iter().map(|g| ring.is_right_divisor(g, row.n)).collect();
    if !cofactors.is_empty() {
        let target = ring.x_n_minus_one(row.n);
        base.factorization =
            Some(cofactors.iter().zip(&polys).all(|(h, g)| ring.mul(&ring.poly(h.clone()), g) == target));
    }
    if !base.all_divide() {
        return vec![base];
    }
    if row.l == 1 {
        let mut a = base;
        match code_from_generator(ring, &polys[0], row.n) {
            Ok(code) => evaluate(cfg, row, &code.into_code(), &mut a),
            Err(e) => a.error = Some(e.to_string()),
        }
        return vec![a];
    }
    let rl = match rl_code_build(ring, row.l, &polys, row.n) {
        Ok(rl) => rl,
        Err(e) => {
            base.error = Some(e.to_string());
            return vec![base];
        }
    };
    let mut out = Vec::new();
    for cand in grays {
        let mut a = base.clone();
        a.gray = Some(cand.label.clone());
        a.beta = Some(field.format_element(cand.matrix.beta()));
        match gray_image(&rl, &cand.matrix) {
            Ok(image) => evaluate(cfg, row, &image, &mut a),
            Err(e) => a.error = Some(e.to_string()),
        }
        let hit = a.matches;
        out.push(a);
        if hit {
            break;
        }
    }
    out
}

fn evaluate(cfg: &Config, row: &Row, code: &LinearCode, a: &mut Attempt) {
    let exp = &row.expect;
    a.n = Some(code.n());
    a.k = Some(code.k());
    if code.n() != exp.n || code.k() != exp.k {
        return;
    }
    if code.k() == 0 {
        a.error = Some("zero code".into());
        return;
    }
    let max_w = exp.d.map(|d| d + 1);
    let dist = match min_distance(code, max_w, cfg.distance_budget) {
        Ok(d) => d,
        Err(e) => {
            a.error = Some(e.to_string());
            return;
        }
    };
    a.d = Some(dist.d);
    a.d_exact = Some(dist.status == DistanceStatus::Exact);
    if dist.is_exact() {
        a.class = classify(code.n(), code.k(), &dist).ok().map(|c| c.label().to_string());
    }
    let d_ok = exp.d.is_none_or(|d| dist.is_exact() && dist.d == d);
    let class_ok = match (&exp.class, &a.class) {
        (None, _) => true,
        (Some(want), Some(got)) => want.eq_ignore_ascii_case(got),
        (Some(_), None) => false,
    };
    let dna_ok = match &row.dna {
        Some(spec) => check_dna(cfg, code, spec, a),
        None => true,
    };
    a.matches = d_ok && class_ok && dna_ok;
}

fn check_dna(cfg: &Config, code: &LinearCode, spec: &DnaExpect, a: &mut Attempt) -> bool {
    let rev = is_reversible(code);
    let comp = match is_complement_closed(code) {
        Ok(c) => c,
        Err(e) => {
            a.error = Some(e.to_string());
            return false;
        }
    };
    a.reversible = Some(rev);
    a.complement_closed = Some(comp);
    let mut ok = spec.reversible.is_none_or(|r| r == rev) && spec.complement_closed.is_none_or(|c| c == comp);
    if !spec.words.is_empty() {
        match emit_dna_table(code, cfg.enumeration_budget) {
            Ok(table) => {
                let cmp = compare_words(code.n(), &table.words, &spec.words);
                ok &= cmp.matches();
                a.dna = Some(cmp);
            }
            Err(e) => {
                a.error = Some(e.to_string());
                ok = false;
            }
        }
    }
    ok
}

pub fn compare_words(n: usize, computed: &[String], table: &[String]) -> DnaComparison {
    let well_formed = |w: &str| w.len() == n && w.chars().all(|c| "ACGT".contains(c));
    let (valid, malformed): (Vec<&String>, Vec<&String>) = table.iter().partition(|w| well_formed(w));
    let computed_set: BTreeSet<&str> = computed.iter().map(String::as_str).collect();
    let table_set: BTreeSet<&str> = valid.iter().map(|s| s.as_str()).collect();
    let missing: Vec<String> = computed_set.difference(&table_set).map(|s| s.to_string()).collect();
    let not_in_code: Vec<String> = table_set.difference(&computed_set).map(|s| s.to_string()).collect();

    let mut unused: Vec<&String> = malformed.clone();
    let mut explained = missing.len() <= malformed.len();
    for m in &missing {
        match unused.iter().position(|entry| m.starts_with(entry.as_str()) || m.ends_with(entry.as_str())) {
            Some(i) => {
                unused.remove(i);
            }
            None => explained = false,
        }
    }
    let valid_words: Vec<&str> = valid.iter().map(|s| s.as_str()).collect();
    DnaComparison {
        computed: computed.len(),
        table_entries: table.len(),
        malformed: malformed.iter().map(|s| s.to_string()).collect(),
        missing_from_table: missing,
        not_in_code,
        malformed_explained: explained,
        digest: set_digest(computed),
        table_digest: set_digest(&valid_words),
    }
}

fn decide(row: &Row, attempts: &[Attempt], chosen: Option<usize>, degrees: Option<&[usize]>, notes: &mut Vec<String>) -> Status {
    if let Some(i) = chosen {
        if let Some(dna) = &attempts[i].dna {
            for (m, w) in dna.malformed.iter().zip(&dna.missing_from_table) {
                notes.push(format!("malformed table entry {m} ({} letters) matched to codeword {w}", m.len()));
            }
        }
        return Status::Pass;
    }
    let arithmetic_ok = degrees.map(|d| row.arithmetic_k(d) == row.expect.k);
    if arithmetic_ok == Some(false) {
        notes.push(format!(
            "expected k = {} disagrees with l*n - sum(deg g_i) = {}",
            row.expect.k,
            row.arithmetic_k(degrees.unwrap_or(&[]))
        ));
    }
    if attempts.is_empty() {
        notes.push("no candidate configuration could be built".into());
        return Status::Fail;
    }
    if !attempts.iter().any(Attempt::all_divide) {
        notes.push("no candidate (modulus, alpha) makes every generator a right divisor of x^n - 1".into());
        return Status::Fail;
    }
    let dims_ok = attempts.iter().any(|a| a.k == Some(row.expect.k) && a.n == Some(row.expect.n));
    if !dims_ok {
        if arithmetic_ok == Some(false) {
            return Status::Flagged;
        }
        notes.push("dimension differs from the table under every dividing candidate".into());
        return Status::Fail;
    }
    let ds: BTreeSet<String> = attempts
        .iter()
        .filter_map(|a| a.d.map(|d| if a.d_exact == Some(true) { d.to_string() } else { format!(">={d}") }))
        .collect();
    notes.push(format!(
        "[n,k] reproduced; no candidate matches d/class/DNA; computed d values: {}",
        ds.into_iter().collect::<Vec<_>>().join(", ")
    ));
    Status::Flagged
}
