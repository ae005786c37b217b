//! Plain-text code files.
//!
//! ```text
//! # comment lines start with '#'
//! 7 4
//! 1000111
//! 0100110
//! 0010101
//! 0001011
//! ```
//!
//! The header is `n k`; each following line is one generator row.

use std::path::Path;

use super::{BinaryMatrix, BitVector, LinearCode};
use crate::error::{Error, Result};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((header_line, header)) = lines.next() else {
        return parse_err(1, "missing 'n k' header");
    };
    let dims: Vec<usize> = match header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
    {
        Ok(d) => d,
        Err(e) => return parse_err(header_line, format!("bad header: {e}")),
    };
    let [n, k] = dims[..] else {
        return parse_err(header_line, "header must be exactly 'n k'");
    };
    if n == 0 || k > n {
        return parse_err(header_line, format!("invalid dimensions n={n} k={k}"));
    }

    let mut rows = Vec::with_capacity(k);
    for (line, text) in lines {
        if rows.len() == k {
            return parse_err(line, format!("more than {k} generator rows"));
        }
        if text.len() != n {
            return parse_err(line, format!("row has {} symbols, expected {n}", text.len()));
        }
        match BitVector::parse(text) {
            Ok(r) => rows.push(r),
            Err(e) => return parse_err(line, e.to_string()),
        }
    }
    if rows.len() != k {
        return parse_err(
            text.lines().count(),
            format!("expected {k} generator rows, found {}", rows.len()),
        );
    }
    LinearCode::from_generator(BinaryMatrix::new(n, rows)?)
}

pub fn read_code(path: impl AsRef<Path>) -> Result<LinearCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

/// Serializes the canonical generator of `code`, preceded by optional comment lines.
pub fn format_code(code: &LinearCode, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("{} {}\n", code.n(), code.k()));
    for row in code.generator().rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}
