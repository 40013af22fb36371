//! Subcommand bodies; `main` only parses arguments and prints.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use skewcodes::codec::{classify, code_from_generator, gray_image, gray_matrix_check, min_distance, rl_code_build, LinearCode};
use skewcodes::dna::{
    emit_dna_table, format_fasta, is_complement_closed, is_palindromic, is_reversible, is_td_palindromic,
    reversibility_certificate,
};
use skewcodes::notation::{format_canonical, format_expression, format_matrix, parse_matrix, parse_poly};
use skewcodes::{FieldOre, FieldPoly, GaloisField};

use crate::config::Config;
use crate::fixture::FixtureFile;
use crate::report::Report;
use crate::verify::verify_rows;

/// Shared ring arguments.
#[derive(Clone, Debug)]
pub struct RingArgs {
    pub q: u32,
    pub frobenius: u32,
    pub alpha: String,
}

impl RingArgs {
    pub fn ring(&self, cfg: &Config) -> Result<FieldOre> {
        let field = cfg.field(self.q)?;
        let alpha = field.parse_element(&self.alpha).with_context(|| format!("alpha `{}`", self.alpha))?;
        Ok(FieldOre::new(field.clone(), field.frobenius(self.frobenius), alpha))
    }
}

fn poly(ring: &FieldOre, text: &str) -> Result<FieldPoly> {
    Ok(ring.poly(parse_poly(ring.base(), text).with_context(|| format!("polynomial `{text}`"))?))
}

pub fn verify(cfg: &Config, fixtures: &[impl AsRef<Path>]) -> Result<Report> {
    let mut rows = Vec::new();
    let mut names = Vec::new();
    for path in fixtures {
        let path = path.as_ref();
        rows.extend(FixtureFile::load(path)?.rows);
        names.push(path.display().to_string());
    }
    let mut seen = std::collections::HashSet::new();
    for r in &rows {
        if !seen.insert(r.id.as_str()) {
            bail!("row id {} appears in more than one fixture", r.id);
        }
    }
    Ok(Report::new(names, verify_rows(cfg, &rows)))
}

#[derive(Clone, Debug, Serialize)]
pub struct Distance {
    pub d: usize,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    pub nodes: u64,
}

fn distance(cfg: &Config, code: &LinearCode) -> Result<Option<Distance>> {
    if code.k() == 0 {
        return Ok(None);
    }
    let r = min_distance(code, None, cfg.distance_budget)?;
    let class = if r.is_exact() { Some(classify(code.n(), code.k(), &r)?.label().to_string()) } else { None };
    Ok(Some(Distance { d: r.d, exact: r.is_exact(), class, nodes: r.nodes }))
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeInfo {
    pub modulus: String,
    pub alpha: String,
    pub generator: String,
    pub expression: String,
    pub n: usize,
    pub k: usize,
    pub distance: Option<Distance>,
    pub palindromic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reversible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complement_closed: Option<bool>,
    pub generator_matrix: Vec<String>,
}

pub fn code_info(cfg: &Config, ring: &RingArgs, n: usize, g: &str) -> Result<CodeInfo> {
    let r = ring.ring(cfg)?;
    let field = r.base();
    let gp = poly(&r, g)?;
    let code = code_from_generator(&r, &gp, n)?.into_code();
    let f4 = field.order() == 4;
    Ok(CodeInfo {
        modulus: field.modulus_string(),
        alpha: ring.alpha.clone(),
        generator: format_canonical(field, gp.coeffs()),
        expression: format_expression(field, gp.coeffs()),
        n,
        k: code.k(),
        distance: distance(cfg, &code)?,
        palindromic: is_palindromic(&gp),
        reversible: f4.then(|| is_reversible(&code)),
        complement_closed: if f4 { Some(is_complement_closed(&code)?) } else { None },
        generator_matrix: code.generator().iter().map(|row| format_canonical(field, row)).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrayInfo {
    pub matrix: String,
    pub beta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<ImageInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageInfo {
    pub n: usize,
    pub k: usize,
    pub distance: Option<Distance>,
}

/// Reads a Gray matrix from a file (one row per line or `;`-separated) or inline text.
pub fn read_matrix_text(arg: &str) -> Result<String> {
    let p = Path::new(arg);
    if p.is_file() {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let rows: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        Ok(rows.join(";"))
    } else {
        Ok(arg.to_string())
    }
}

pub fn gray(cfg: &Config, ring: &RingArgs, l: usize, matrix: &str, n: Option<usize>, gens: &[String]) -> Result<GrayInfo> {
    let r = ring.ring(cfg)?;
    let field: &GaloisField = r.base();
    let m = gray_matrix_check(field, parse_matrix(field, matrix)?, l)?;
    let image = match n {
        Some(n) if !gens.is_empty() => {
            let polys = gens.iter().map(|g| poly(&r, g)).collect::<Result<Vec<_>>>()?;
            let rl = rl_code_build(&r, l, &polys, n)?;
            let img = gray_image(&rl, &m)?;
            Some(ImageInfo { n: img.n(), k: img.k(), distance: distance(cfg, &img)? })
        }
        Some(_) => bail!("--g is required with --n"),
        None if !gens.is_empty() => bail!("--n is required with --g"),
        None => None,
    };
    Ok(GrayInfo { matrix: format_matrix(field, m.matrix()), beta: field.format_element(m.beta()), image })
}

#[derive(Clone, Debug, Serialize)]
pub struct DnaInfo {
    pub n: usize,
    pub k: usize,
    pub reversible: bool,
    pub complement_closed: bool,
    pub dna_code: bool,
    pub palindromic: bool,
    pub td_palindromic: bool,
    /// Sufficient condition from the generator alone, when applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    pub words: Vec<String>,
    pub digest: String,
}

pub fn dna(cfg: &Config, ring: &RingArgs, n: usize, g: &str) -> Result<DnaInfo> {
    if ring.q != 4 {
        bail!("DNA codes need q = 4");
    }
    let r = ring.ring(cfg)?;
    let gp = poly(&r, g)?;
    let sc = code_from_generator(&r, &gp, n)?;
    let cert = reversibility_certificate(&sc);
    let code = sc.code();
    let table = emit_dna_table(code, cfg.enumeration_budget)?;
    let reversible = is_reversible(code);
    let complement_closed = is_complement_closed(code)?;
    Ok(DnaInfo {
        n,
        k: code.k(),
        reversible,
        complement_closed,
        dna_code: reversible && complement_closed,
        palindromic: is_palindromic(&gp),
        td_palindromic: is_td_palindromic(&r, &gp),
        certificate: cert.condition.filter(|_| cert.hypotheses_hold()).map(str::to_string),
        words: table.words,
        digest: table.digest,
    })
}

pub fn dna_text(info: &DnaInfo, fasta: bool) -> String {
    if fasta {
        format_fasta(&info.words)
    } else {
        let mut s = info.words.join("\n");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorCheck {
    pub modulus: String,
    pub alpha: String,
    pub product: String,
    pub product_equals: bool,
    pub remainder_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remainder: Option<String>,
}

pub fn factor_check(cfg: &Config, ring: &RingArgs, n: usize, g: &str, cofactor: &str) -> Result<FactorCheck> {
    let r = ring.ring(cfg)?;
    let field = r.base();
    let gp = poly(&r, g)?;
    let hp = poly(&r, cofactor)?;
    let target = r.x_n_minus_one(n);
    let product = r.mul(&hp, &gp);
    let (quotient, remainder) = match r.right_divide(&target, &gp) {
        Ok((q, rem)) => (Some(format_expression(field, q.coeffs())), Some(rem)),
        Err(_) => (None, None),
    };
    Ok(FactorCheck {
        modulus: field.modulus_string(),
        alpha: ring.alpha.clone(),
        product: format_expression(field, product.coeffs()),
        product_equals: product == target,
        remainder_zero: remainder.as_ref().is_some_and(|r| r.is_zero()),
        quotient,
        remainder: remainder.map(|r| format_expression(field, r.coeffs())),
    })
}
