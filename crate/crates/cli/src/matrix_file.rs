//! Matrix files: a JSON object `{"rows", "cols", "data": [{"re", "im"}, ...]}`
//! or plain text with one row per line.
//!
//! Text entries are whitespace-separated complex literals: `a`, `bi`, `a+bi`,
//! `a-bi`, with `i`, `+i` and `-i` standing for unit imaginary parts. Blank
//! lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use ginv_core::{ComplexMatrix, C64};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Entry>,
}

/// Parses `source` in the given format, or guesses it from the first
/// non-blank character (`{` means JSON) when `format` is `None`.
pub fn parse_matrix(source: &str, format: Option<Format>) -> Result<ComplexMatrix, CliError> {
    let format = format.unwrap_or_else(|| {
        if source.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Text
        }
    });
    match format {
        Format::Json => parse_json(source),
        Format::Text => parse_text(source),
    }
}

fn parse_json(source: &str) -> Result<ComplexMatrix, CliError> {
    let m: JsonMatrix = serde_json::from_str(source).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if m.data.len() != m.rows * m.cols {
        return Err(CliError::DimensionMismatch(format!(
            "{}x{} matrix needs {} entries, got {}",
            m.rows,
            m.cols,
            m.rows * m.cols,
            m.data.len()
        )));
    }
    let data = m.data.iter().map(|e| C64::new(e.re, e.im)).collect();
    ComplexMatrix::new(m.rows, m.cols, data).map_err(CliError::from)
}

fn parse_text(source: &str) -> Result<ComplexMatrix, CliError> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    let mut first_line = 0;
    for (ln, line) in source.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (col, tok) in tokens(line) {
            let z = parse_entry(tok).map_err(|message| CliError::Parse {
                line: ln + 1,
                column: col + 1,
                message,
            })?;
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(CliError::NonFiniteEntry {
                    line: ln + 1,
                    column: col + 1,
                });
            }
            row.push(z);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(CliError::DimensionMismatch(format!(
                    "line {} has {} entries but line {} has {}",
                    ln + 1,
                    row.len(),
                    first_line + 1,
                    first.len()
                )));
            }
        } else {
            first_line = ln;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Parse {
            line: 1,
            column: 1,
            message: "no matrix rows".into(),
        });
    }
    let (r, c) = (rows.len(), rows[0].len());
    ComplexMatrix::new(r, c, rows.into_iter().flatten().collect()).map_err(CliError::from)
}

/// Whitespace-separated tokens with their starting character column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (idx, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col, idx)),
            (true, Some((c, s))) => {
                out.push((c, &line[s..idx]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, s)) = start {
        out.push((c, &line[s..]));
    }
    out.into_iter()
}

fn parse_real(s: &str, tok: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => s
            .parse::<f64>()
            .map_err(|_| format!("invalid number in `{tok}`")),
    }
}

fn parse_entry(tok: &str) -> Result<C64, String> {
    let Some(body) = tok.strip_suffix('i') else {
        return tok
            .parse::<f64>()
            .map(|re| C64::new(re, 0.0))
            .map_err(|_| format!("invalid number `{tok}`"));
    };
    // the imaginary part starts at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    match split {
        Some(p) => {
            let re = body[..p]
                .parse::<f64>()
                .map_err(|_| format!("invalid real part in `{tok}`"))?;
            Ok(C64::new(re, parse_real(&body[p..], tok)?))
        }
        None => Ok(C64::new(0.0, parse_real(body, tok)?)),
    }
}

fn entry_text(z: C64) -> String {
    if z.im == 0.0 && z.im.is_sign_positive() {
        format!("{:?}", z.re)
    } else {
        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
        format!("{:?}{}{:?}i", z.re, sign, z.im.abs())
    }
}

/// Serializes `m` so that [`parse_matrix`] reproduces it bit for bit.
pub fn serialize_matrix(m: &ComplexMatrix, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(m).expect("matrix serialization cannot fail");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for i in 0..m.rows() {
                let row: Vec<String> = (0..m.cols()).map(|j| entry_text(m.get(i, j))).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
            s
        }
    }
}
