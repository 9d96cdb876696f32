//! Matrix Market text: `coordinate` and `array` layouts, `real` or
//! `integer` fields, `general` or `symmetric` storage.
//!
//! Indices are 1-based on disk and 0-based in memory. Duplicate coordinate
//! entries are summed and symmetric storage is expanded to both triangles.
//! Values are written in the shortest form that reads back bit-exactly.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    General,
    Symmetric,
}

/// Parsed banner line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub layout: Layout,
    pub symmetry: Symmetry,
}

fn parse_err(line: usize, message: &'static str) -> Error {
    Error::Parse { line, message }
}

fn parse_header(line: &str) -> Result<Header> {
    let lower = line.to_ascii_lowercase();
    let mut words = lower.split_whitespace();
    if words.next() != Some("%%matrixmarket") {
        return Err(parse_err(1, "missing %%MatrixMarket banner"));
    }
    if words.next() != Some("matrix") {
        return Err(parse_err(1, "only the matrix object is supported"));
    }
    let layout = match words.next() {
        Some("coordinate") => Layout::Coordinate,
        Some("array") => Layout::Array,
        _ => return Err(parse_err(1, "format must be coordinate or array")),
    };
    match words.next() {
        Some("real") | Some("integer") => {}
        Some("complex") => return Err(parse_err(1, "complex fields are not supported")),
        Some("pattern") => return Err(parse_err(1, "pattern fields are not supported")),
        _ => return Err(parse_err(1, "unknown field type")),
    }
    let symmetry = match words.next() {
        Some("general") => Symmetry::General,
        Some("symmetric") => Symmetry::Symmetric,
        Some("skew-symmetric") | Some("hermitian") => {
            return Err(parse_err(1, "only general and symmetric storage are supported"))
        }
        _ => return Err(parse_err(1, "unknown symmetry")),
    };
    if words.next().is_some() {
        return Err(parse_err(1, "trailing words in banner"));
    }
    Ok(Header { layout, symmetry })
}

fn parse_usize(tok: Option<&str>, line: usize, what: &'static str) -> Result<usize> {
    tok.and_then(|t| t.parse().ok()).ok_or(parse_err(line, what))
}

fn parse_value(tok: Option<&str>, line: usize) -> Result<f64> {
    let v: f64 = tok
        .and_then(|t| t.parse().ok())
        .ok_or(parse_err(line, "expected a real value"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(parse_err(line, "value is not finite"))
    }
}

/// Data lines with their 1-based line numbers, comments and blanks skipped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

/// Parses Matrix Market text into canonical CSR.
pub fn parse(text: &str) -> Result<SparseMatrix> {
    let first = text.lines().next().ok_or(parse_err(1, "empty input"))?;
    let header = parse_header(first)?;
    let mut lines = data_lines(text);
    let (size_line, size) = lines.next().ok_or(parse_err(1, "missing size line"))?;
    let mut toks = size.split_whitespace();
    let rows = parse_usize(toks.next(), size_line, "expected the row count")?;
    let cols = parse_usize(toks.next(), size_line, "expected the column count")?;
    let symmetric = header.symmetry == Symmetry::Symmetric;
    if symmetric && rows != cols {
        return Err(parse_err(size_line, "symmetric matrix must be square"));
    }
    let mut triplets = Vec::new();
    let mut last_line = size_line;
    match header.layout {
        Layout::Coordinate => {
            let nnz = parse_usize(toks.next(), size_line, "expected the entry count")?;
            if toks.next().is_some() {
                return Err(parse_err(size_line, "size line has extra fields"));
            }
            triplets.reserve(if symmetric { 2 * nnz } else { nnz });
            for _ in 0..nnz {
                let (ln, l) = lines.next().ok_or(parse_err(last_line + 1, "fewer entries than declared"))?;
                last_line = ln;
                let mut t = l.split_whitespace();
                let i = parse_usize(t.next(), ln, "expected a row index")?;
                let j = parse_usize(t.next(), ln, "expected a column index")?;
                let v = parse_value(t.next(), ln)?;
                if t.next().is_some() {
                    return Err(parse_err(ln, "entry has extra fields"));
                }
                if i == 0 || i > rows || j == 0 || j > cols {
                    return Err(parse_err(ln, "index out of range"));
                }
                if symmetric && j > i {
                    return Err(parse_err(ln, "symmetric storage must be lower triangular"));
                }
                triplets.push((i - 1, j - 1, v));
                if symmetric && i != j {
                    triplets.push((j - 1, i - 1, v));
                }
            }
        }
        Layout::Array => {
            if toks.next().is_some() {
                return Err(parse_err(size_line, "size line has extra fields"));
            }
            for j in 0..cols {
                let start = if symmetric { j } else { 0 };
                for i in start..rows {
                    let (ln, l) = lines.next().ok_or(parse_err(last_line + 1, "fewer values than declared"))?;
                    last_line = ln;
                    let mut t = l.split_whitespace();
                    let v = parse_value(t.next(), ln)?;
                    if t.next().is_some() {
                        return Err(parse_err(ln, "one value per line expected"));
                    }
                    if v != 0.0 {
                        triplets.push((i, j, v));
                        if symmetric && i != j {
                            triplets.push((j, i, v));
                        }
                    }
                }
            }
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "more entries than declared"));
    }
    SparseMatrix::from_triplets(rows, cols, triplets)
}

/// Parses an `array` file into a dense column-major matrix.
pub fn parse_dense(text: &str) -> Result<DenseMatrix> {
    let first = text.lines().next().ok_or(parse_err(1, "empty input"))?;
    if parse_header(first)?.layout != Layout::Array {
        return Err(parse_err(1, "expected the array format"));
    }
    let sparse = parse(text)?;
    Ok(sparse.to_dense())
}

/// `coordinate real general` text listing every stored entry.
pub fn write_coordinate(m: &SparseMatrix) -> String {
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz());
    for (i, j, v) in m.triplets() {
        let _ = writeln!(out, "{} {} {:e}", i + 1, j + 1, v);
    }
    out
}

/// `array real general` text, column-major.
pub fn write_array(m: &DenseMatrix) -> String {
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for v in m.as_slice() {
        let _ = writeln!(out, "{v:e}");
    }
    out
}
