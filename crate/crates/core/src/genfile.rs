//! Plain-text generator matrix files.
//!
//! ```text
//! # comment lines start with '#'
//! q 11
//! rows 2 cols 4
//! 1 1 1 1
//! 0 1 2 3
//! ```
//!
//! Entries are canonical integer representations of field elements: for
//! `q = p^e` the integer whose base-`p` digits are the polynomial
//! coefficients, low degree first.

use std::fmt::Write as _;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn keyword<'a>(toks: &mut impl Iterator<Item = &'a str>, want: &str, line: usize) -> Result<u64> {
    match toks.next() {
        Some(t) if t == want => {}
        Some(t) => return Err(parse_err(line, format!("expected {want:?}, found {t:?}"))),
        None => return Err(parse_err(line, format!("expected {want:?}"))),
    }
    let v = toks.next().ok_or_else(|| parse_err(line, format!("missing value after {want:?}")))?;
    v.parse().map_err(|_| parse_err(line, format!("bad value {v:?} for {want:?}")))
}

/// Parses a generator matrix file.
pub fn parse(text: &str) -> Result<Matrix> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let mut toks = first.split_whitespace();
    let q = keyword(&mut toks, "q", ln)?;
    if toks.next().is_some() {
        return Err(parse_err(ln, "trailing tokens after q"));
    }
    let field = Field::with_order(q).map_err(|e| parse_err(ln, e.to_string()))?;
    let (ln, second) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing \"rows <k> cols <n>\" line"))?;
    let mut toks = second.split_whitespace();
    let rows = keyword(&mut toks, "rows", ln)? as usize;
    let cols = keyword(&mut toks, "cols", ln)? as usize;
    if toks.next().is_some() {
        return Err(parse_err(ln, "trailing tokens after cols"));
    }
    if rows.saturating_mul(cols) > crate::linalg::MAX_ENTRIES {
        return Err(parse_err(ln, format!("{rows} x {cols} matrix exceeds the size guard")));
    }
    let mut values = Vec::with_capacity(rows * cols);
    let mut last = ln;
    for r in 0..rows {
        let (ln, line) =
            lines.next().ok_or_else(|| parse_err(last + 1, format!("expected {rows} matrix rows, found {r}")))?;
        last = ln;
        let mut count = 0;
        for tok in line.split_whitespace() {
            let v: u64 = tok.parse().map_err(|_| parse_err(ln, format!("bad entry {tok:?}")))?;
            if v >= q {
                return Err(parse_err(ln, format!("entry {v} is not below q = {q}")));
            }
            values.push(v as u32);
            count += 1;
        }
        if count != cols {
            return Err(parse_err(ln, format!("expected {cols} entries, found {count}")));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, format!("more than {rows} matrix rows")));
    }
    Matrix::from_values(&field, rows, cols, &values)
}

/// Parses a file into the code spanned by its rows.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    parse(text).map(LinearCode::new)
}

/// Serializes a matrix in the format read by [`parse`].
pub fn write(m: &Matrix) -> String {
    let mut out = String::new();
    writeln!(out, "q {}", m.field().q()).unwrap();
    writeln!(out, "rows {} cols {}", m.rows(), m.cols()).unwrap();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.value().to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}
