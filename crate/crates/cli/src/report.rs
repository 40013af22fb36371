//! Persisted verification reports: JSON with a validating reader, plus a CSV summary.

use std::collections::HashSet;
use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::verify::{RowReport, Status};

pub const SCHEMA: &str = "skewcodes-report/1";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("report JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema `{0}`")]
    Schema(String),
    #[error("row {0}: {1}")]
    Row(String, String),
    #[error("duplicate row id {0}")]
    Duplicate(String),
    #[error("summary {field} = {stated}, rows give {actual}")]
    Summary { field: &'static str, stated: usize, actual: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

impl Summary {
    pub fn of(rows: &[RowReport]) -> Self {
        let count = |s| rows.iter().filter(|r| r.status == s).count();
        Summary { total: rows.len(), pass: count(Status::Pass), fail: count(Status::Fail), flagged: count(Status::Flagged) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub fixtures: Vec<String>,
    pub summary: Summary,
    pub rows: Vec<RowReport>,
}

impl Report {
    pub fn new(fixtures: Vec<String>, rows: Vec<RowReport>) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            fixtures,
            summary: Summary::of(&rows),
            rows,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    /// Copy with wall-clock fields removed, for run-to-run comparison.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for row in &mut r.rows {
            row.elapsed_ms = None;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let r: Report = serde_json::from_str(text)?;
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), ReportError> {
        if self.schema != SCHEMA {
            return Err(ReportError::Schema(self.schema.clone()));
        }
        let mut ids = HashSet::new();
        for row in &self.rows {
            if !ids.insert(row.id.as_str()) {
                return Err(ReportError::Duplicate(row.id.clone()));
            }
            let bad = |m: &str| Err(ReportError::Row(row.id.clone(), m.to_string()));
            match (row.status, row.chosen_attempt()) {
                (Status::Pass, None) => return bad("PASS without a chosen attempt"),
                (Status::Pass, Some(a)) if !a.matches => return bad("chosen attempt does not match"),
                (Status::Pass, Some(_)) => {}
                (_, Some(_)) => return bad("only PASS rows carry a chosen attempt"),
                (_, None) => {}
            }
            if row.chosen.is_some_and(|i| i >= row.attempts.len()) {
                return bad("chosen index out of range");
            }
            if row.status != Status::Pass && row.attempts.iter().any(|a| a.matches) {
                return bad("a matching attempt exists but the row is not PASS");
            }
        }
        let actual = Summary::of(&self.rows);
        for (field, stated, actual) in [
            ("total", self.summary.total, actual.total),
            ("pass", self.summary.pass, actual.pass),
            ("fail", self.summary.fail, actual.fail),
            ("flagged", self.summary.flagged, actual.flagged),
        ] {
            if stated != actual {
                return Err(ReportError::Summary { field, stated, actual });
            }
        }
        Ok(())
    }

    /// One line per row: expectation, then the chosen (or most informative) attempt.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "id", "status", "q", "l", "expected_n", "expected_k", "expected_d", "n", "k", "d", "d_exact", "class",
            "modulus", "alpha", "gray", "attempts",
        ])?;
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        for row in &self.rows {
            let a = row.representative();
            w.write_record([
                row.id.clone(),
                row.status.as_str().to_string(),
                row.q.to_string(),
                row.l.to_string(),
                row.expected.n.to_string(),
                row.expected.k.to_string(),
                opt(row.expected.d),
                opt(a.and_then(|a| a.n)),
                opt(a.and_then(|a| a.k)),
                opt(a.and_then(|a| a.d)),
                a.and_then(|a| a.d_exact).map(|b| b.to_string()).unwrap_or_default(),
                a.and_then(|a| a.class.clone()).unwrap_or_default(),
                a.map(|a| a.modulus.clone()).unwrap_or_default(),
                a.map(|a| a.alpha.clone()).unwrap_or_default(),
                a.and_then(|a| a.gray.clone()).unwrap_or_default(),
                row.attempts.len().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
