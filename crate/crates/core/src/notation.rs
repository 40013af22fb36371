//! Text forms for polynomials and matrices over a field.
//!
//! Canonical form: comma-separated element tokens in ascending order,
//! `"t^20,t^19,1"` for `t^20 + t^19 x + x^2`. The concatenated table form
//! (`"t^{20}t^{19}1"`) is accepted only when it has a single reading.

use crate::error::{Error, Result};
use crate::galois::{Felt, GaloisField};

fn trim_zeros(mut v: Vec<Felt>) -> Vec<Felt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Parses the canonical comma form. `"0"` is the zero polynomial.
pub fn parse_canonical(field: &GaloisField, text: &str) -> Result<Vec<Felt>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let coeffs = text
        .split(',')
        .map(|tok| field.parse_element(tok.trim()))
        .collect::<Result<Vec<_>>>()?;
    Ok(trim_zeros(coeffs))
}

/// Canonical comma form; the zero polynomial prints as `"0"`.
pub fn format_canonical(field: &GaloisField, coeffs: &[Felt]) -> String {
    let trimmed = trim_zeros(coeffs.to_vec());
    if trimmed.is_empty() {
        return "0".into();
    }
    trimmed.iter().map(|&c| field.format_element(c)).collect::<Vec<_>>().join(",")
}

/// Human form such as `x^2 + t^19x + t^20`, highest degree first.
pub fn format_expression(field: &GaloisField, coeffs: &[Felt]) -> String {
    let trimmed = trim_zeros(coeffs.to_vec());
    if trimmed.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in trimmed.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let coef = field.format_element(c);
        terms.push(match (coef.as_str(), mono.is_empty()) {
            (_, true) => coef,
            ("1", false) => mono,
            _ => format!("{coef}{mono}"),
        });
    }
    terms.join(" + ")
}

#[derive(Clone, Debug)]
struct Tok {
    start: usize,
    end: usize,
    value: Felt,
    text: String,
}

fn parse_err(text: &str, at: usize) -> Error {
    Error::Parse(format!("unreadable coefficient string `{text}` at byte {at}"))
}

/// Every way to read one token starting at byte `i`.
fn token_options(field: &GaloisField, s: &[u8], i: usize) -> Vec<Tok> {
    let q1 = field.order() as u64 - 1;
    let p = field.characteristic() as u64;
    let mut out = Vec::new();
    let mk = |end: usize, value: Felt| Tok {
        start: i,
        end,
        value,
        text: field.format_element(value),
    };
    match s[i] {
        b'0'..=b'9' => {
            let d = (s[i] - b'0') as u64;
            if d < p {
                out.push(mk(i + 1, field.from_int(d as i64)));
            }
        }
        b't' => {
            if s.get(i + 1) != Some(&b'^') {
                out.push(mk(i + 1, field.generator()));
            } else if s.get(i + 2) == Some(&b'{') {
                let close = s[i + 3..].iter().position(|&b| b == b'}').map(|k| i + 3 + k);
                if let Some(close) = close {
                    let digits = std::str::from_utf8(&s[i + 3..close]).unwrap_or("");
                    if let Ok(k) = digits.parse::<u64>() {
                        if k < q1 {
                            out.push(mk(close + 1, field.primitive_power(k as i64)));
                        }
                    }
                }
            } else {
                let mut j = i + 2;
                let mut k: u64 = 0;
                while j < s.len() && s[j].is_ascii_digit() {
                    // a leading zero exponent only reads as t^0
                    if j > i + 2 && s[i + 2] == b'0' {
                        break;
                    }
                    k = k * 10 + (s[j] - b'0') as u64;
                    if k >= q1 {
                        break;
                    }
                    out.push(mk(j + 1, field.primitive_power(k as i64)));
                    j += 1;
                }
            }
        }
        _ => {}
    }
    out
}

fn all_readings(field: &GaloisField, s: &[u8], i: usize, limit: usize) -> Vec<Vec<Tok>> {
    if i == s.len() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tok in token_options(field, s, i) {
        for mut rest in all_readings(field, s, tok.end, limit) {
            rest.insert(0, tok.clone());
            out.push(rest);
            if out.len() >= limit {
                return out;
            }
        }
    }
    out
}

/// Parses the concatenated table form, e.g. `"1t^3t^7t1"` or `"t^{16}t^{17}1"`.
/// Exponents must lie below `q - 1` and prime-field literals are single digits;
/// any string with more than one reading is rejected with its span.
pub fn parse_compact(field: &GaloisField, text: &str) -> Result<Vec<Felt>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != '$' && *c != '~').collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let s = cleaned.as_bytes();
    let readings = all_readings(field, s, 0, 64);
    match readings.len() {
        0 => Err(parse_err(&cleaned, 0)),
        1 => Ok(trim_zeros(readings[0].iter().map(|t| t.value).collect())),
        _ => {
            // first token boundary where the readings diverge
            let mut k = 0;
            while readings.iter().all(|r| {
                r.get(k).map(|t| (t.start, t.end)) == readings[0].get(k).map(|t| (t.start, t.end))
            }) {
                k += 1;
            }
            let start = readings.iter().filter_map(|r| r.get(k)).map(|t| t.start).min().unwrap_or(0);
            let end = readings
                .iter()
                .filter_map(|r| r.get(k))
                .map(|t| t.end)
                .max()
                .unwrap_or(s.len());
            let end = end.max(
                readings
                    .iter()
                    .filter_map(|r| r.get(k + 1))
                    .map(|t| t.end)
                    .min()
                    .unwrap_or(end),
            );
            Err(Error::AmbiguousNotation {
                text: cleaned.clone(),
                start,
                end,
                readings: readings
                    .iter()
                    .map(|r| r.iter().map(|t| t.text.clone()).collect::<Vec<_>>().join(","))
                    .collect(),
            })
        }
    }
}

/// Parses a sum of terms such as `x^2 + t^{19}x + t^{20}` or `x^12 - 1`.
pub fn parse_expression(field: &GaloisField, text: &str) -> Result<Vec<Felt>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace() && *c != '$').collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<Felt> = Vec::new();
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut last = 0;
    let mut negative = false;
    let bytes = s.as_bytes();
    let mut depth = 0;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'{' => depth += 1,
            b'}' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                if i > last {
                    terms.push((negative, &s[last..i]));
                } else if i > 0 {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")));
                }
                negative = b == b'-';
                last = i + 1;
            }
            _ => {}
        }
    }
    if last >= s.len() {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    terms.push((negative, &s[last..]));

    for (neg, term) in terms {
        let (coef_text, power) = match term.find('x') {
            None => (term, 0usize),
            Some(pos) => {
                let tail = &term[pos + 1..];
                let power = if tail.is_empty() {
                    1
                } else if let Some(e) = tail.strip_prefix('^') {
                    e.trim_start_matches('{')
                        .trim_end_matches('}')
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
                } else {
                    return Err(Error::Parse(format!("unexpected text after x in `{term}`")));
                };
                (&term[..pos], power)
            }
        };
        let mut c = if coef_text.is_empty() {
            field.one()
        } else {
            // products of tokens such as `2t^3` are allowed
            product_of_tokens(field, coef_text)?
        };
        if neg {
            c = field.neg(c);
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Felt::ZERO);
        }
        coeffs[power] = field.add(coeffs[power], c);
    }
    Ok(trim_zeros(coeffs))
}

fn product_of_tokens(field: &GaloisField, text: &str) -> Result<Felt> {
    let whole = text.replace(['{', '}'], "");
    if let Ok(v) = field.parse_element(&whole) {
        return Ok(v);
    }
    let s = text.as_bytes();
    let readings = all_readings(field, s, 0, 64);
    let values: Vec<Felt> = readings
        .iter()
        .map(|r| r.iter().fold(field.one(), |acc, t| field.mul(acc, t.value)))
        .collect();
    match values.first() {
        None => Err(parse_err(text, 0)),
        Some(&v) if values.iter().all(|&w| w == v) => Ok(v),
        Some(_) => Err(Error::AmbiguousNotation {
            text: text.to_string(),
            start: 0,
            end: text.len(),
            readings: values.iter().map(|&v| field.format_element(v)).collect(),
        }),
    }
}

/// Dispatches on shape: an `x` means expression form, a comma or a single
/// token means canonical form, anything else is read as the table form.
pub fn parse_poly(field: &GaloisField, text: &str) -> Result<Vec<Felt>> {
    let t = text.trim();
    if t.contains('x') {
        parse_expression(field, t)
    } else if t.contains(',') || field.parse_element(t).is_ok() {
        parse_canonical(field, t)
    } else {
        parse_compact(field, t)
    }
}

/// Rows separated by `;`, entries by `,`: `"1,t;t,1"`.
pub fn parse_matrix(field: &GaloisField, text: &str) -> Result<Vec<Vec<Felt>>> {
    let rows: Vec<Vec<Felt>> = text
        .trim()
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.split(',').map(|tok| field.parse_element(tok.trim())).collect())
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(rows)
}

pub fn format_matrix(field: &GaloisField, rows: &[Vec<Felt>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|&c| field.format_element(c)).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}
