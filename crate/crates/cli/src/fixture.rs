//! Fixture files: hand-transcribed table rows in TOML.
//!
//! ```toml
//! title = "Table 1"
//!
//! [[row]]
//! id = "table1.row1"
//! q = 9
//! n = 16
//! alpha = ["t^2"]              # derivation multipliers, tried in order
//! generators = ["1,t^3,t^7,t,1"]
//! expect = { n = 16, k = 12, d = 4, class = "almost MDS" }
//! ```

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    #[serde(default)]
    pub title: String,
    #[serde(default, rename = "row")]
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub id: String,
    pub q: u32,
    /// Length over the coefficient ring.
    pub n: usize,
    /// Frobenius exponent `e` in `theta(a) = a^{p^e}`.
    #[serde(default = "one")]
    pub frobenius: u32,
    pub alpha: Vec<String>,
    /// Modulus candidates (ascending `F_p` coefficients); empty means configured or default.
    #[serde(default)]
    pub moduli: Vec<Vec<u32>>,
    /// Number of idempotent components; 1 is a plain field code.
    #[serde(default = "one_usize")]
    pub l: usize,
    pub generators: Vec<String>,
    /// Displayed cofactors `h_i` with `h_i g_i = x^n - 1`.
    #[serde(default)]
    pub cofactors: Vec<String>,
    pub expect: Expect,
    /// Explicit Gray matrices, rows separated by `;`.
    #[serde(default)]
    pub gray: Vec<String>,
    /// Append the enumerated candidate family after `gray`.
    #[serde(default)]
    pub gray_family: bool,
    #[serde(default)]
    pub dna: Option<DnaExpect>,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    /// Length of the final (image) code.
    pub n: usize,
    pub k: usize,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub class: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DnaExpect {
    #[serde(default)]
    pub reversible: Option<bool>,
    #[serde(default)]
    pub complement_closed: Option<bool>,
    /// Codewords as printed; entries of the wrong length are flagged, not compared.
    #[serde(default)]
    pub words: Vec<String>,
}

fn one() -> u32 {
    1
}

fn one_usize() -> usize {
    1
}

impl Row {
    /// Dimension implied by the generator degrees, if they parse.
    pub fn arithmetic_k(&self, degrees: &[usize]) -> usize {
        (self.l * self.n).saturating_sub(degrees.iter().sum::<usize>())
    }

    fn validate(&self) -> Result<()> {
        if self.id.trim().is_empty() {
            bail!("row with empty id");
        }
        if self.alpha.is_empty() {
            bail!("{}: at least one alpha candidate is required", self.id);
        }
        if self.generators.len() != self.l {
            bail!("{}: l = {} but {} generators given", self.id, self.l, self.generators.len());
        }
        if !self.cofactors.is_empty() && self.cofactors.len() != self.generators.len() {
            bail!("{}: cofactor count differs from generator count", self.id);
        }
        if self.l == 1 && self.expect.n != self.n {
            bail!("{}: field code with expect.n != n", self.id);
        }
        if self.l > 1 && self.expect.n != self.l * self.n {
            bail!("{}: image length must be l * n", self.id);
        }
        if self.l == 1 && (!self.gray.is_empty() || self.gray_family) {
            bail!("{}: Gray matrices need l > 1", self.id);
        }
        if self.dna.is_some() && self.q != 4 {
            bail!("{}: DNA checks need q = 4", self.id);
        }
        Ok(())
    }
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: FixtureFile = toml::from_str(text)?;
        let mut seen = std::collections::HashSet::new();
        for row in &f.rows {
            row.validate()?;
            if !seen.insert(row.id.clone()) {
                bail!("duplicate row id {}", row.id);
            }
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in fixture {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROW: &str = r#"
title = "t"
[[row]]
id = "a"
q = 49
n = 21
alpha = ["t^2"]
generators = ["t^20,t^19,1"]
expect = { n = 21, k = 19, d = 3, class = "MDS" }
"#;

    #[test]
    fn parses_minimal_row() {
        let f = FixtureFile::parse(ROW).unwrap();
        assert_eq!(f.rows.len(), 1);
        assert_eq!(f.rows[0].frobenius, 1);
        assert_eq!(f.rows[0].l, 1);
        assert_eq!(f.rows[0].arithmetic_k(&[2]), 19);
    }

    #[test]
    fn schema_violations() {
        assert!(FixtureFile::parse(&ROW.replace("alpha = [\"t^2\"]", "alpha = []")).is_err());
        assert!(FixtureFile::parse(&ROW.replace("n = 21, k", "n = 20, k")).is_err());
        assert!(FixtureFile::parse(&format!("{ROW}\nbogus = 1")).is_err());
        let dup = format!("{ROW}{}", ROW.replace("title = \"t\"", ""));
        assert!(FixtureFile::parse(&dup).is_err());
        assert!(FixtureFile::parse("").unwrap().rows.is_empty());
    }
}
