//! Matrix Market and CSV matrix files.
//!
//! * Matrix Market `array` format, `complex` (two numbers per line) or
//!   `real` (one), `general` symmetry, entries in column-major order.
//! * CSV: one matrix row per line, cells `re,im` separated by `;`.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so a write followed by a read is bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use zolo_core::{DenseMatrix, C64};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[value(name = "matrixmarket", alias = "mm")]
    MatrixMarket,
    Csv,
}

impl Format {
    /// `.csv` means CSV; anything else is read as Matrix Market.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::MatrixMarket,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, msg: msg.into() }
}

fn number(s: &str, line: usize) -> Result<f64, CliError> {
    let t = s.trim();
    let x: f64 = t.parse().map_err(|_| parse_err(line, format!("not a number: {t:?}")))?;
    if !x.is_finite() {
        return Err(parse_err(line, format!("non-finite value {t:?}")));
    }
    Ok(x)
}

pub fn parse_matrix_market(text: &str) -> Result<DenseMatrix, CliError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(parse_err(1, "expected '%%MatrixMarket matrix array <field> general'"));
    }
    if fields[2] != "array" {
        return Err(parse_err(1, format!("unsupported layout {:?}; only 'array' is read", fields[2])));
    }
    let complex = match fields[3].as_str() {
        "complex" => true,
        "real" => false,
        f => return Err(parse_err(1, format!("unsupported field {f:?}"))),
    };
    if fields[4] != "general" {
        return Err(parse_err(1, format!("unsupported symmetry {:?}", fields[4])));
    }
    let mut body = lines.filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('%'));
    let (size_line, size) = body.next().ok_or_else(|| parse_err(1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(parse_err(size_line, "size line must hold 'rows cols'"));
    }
    let dim = |s: &str| s.parse::<usize>().map_err(|_| parse_err(size_line, format!("bad dimension {s:?}")));
    let (rows, cols) = (dim(dims[0])?, dim(dims[1])?);
    if rows != cols {
        return Err(CliError::NonSquare { rows, cols });
    }
    let n = rows;
    let mut data = vec![C64::new(0.0, 0.0); n * n];
    let mut count = 0;
    for (line, text) in body {
        let parts: Vec<&str> = text.split_whitespace().collect();
        let want = if complex { 2 } else { 1 };
        if parts.len() != want {
            return Err(parse_err(line, format!("expected {want} number(s), found {}", parts.len())));
        }
        if count == n * n {
            return Err(parse_err(line, "more entries than rows x cols"));
        }
        let re = number(parts[0], line)?;
        let im = if complex { number(parts[1], line)? } else { 0.0 };
        let (i, j) = (count % n, count / n);
        data[i * n + j] = C64::new(re, im);
        count += 1;
    }
    if count != n * n {
        return Err(parse_err(text.lines().count(), format!("expected {} entries, found {count}", n * n)));
    }
    Ok(DenseMatrix::new(n, data)?)
}

pub fn parse_csv(text: &str) -> Result<DenseMatrix, CliError> {
    let mut rows: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for cell in raw.split(';') {
            let parts: Vec<&str> = cell.split(',').collect();
            if parts.len() != 2 {
                return Err(parse_err(line, format!("cell {:?} is not 're,im'", cell.trim())));
            }
            row.push(C64::new(number(parts[0], line)?, number(parts[1], line)?));
        }
        rows.push((line, row));
    }
    if rows.is_empty() {
        return Err(parse_err(1, "empty file"));
    }
    let cols = rows[0].1.len();
    if let Some((line, r)) = rows.iter().find(|(_, r)| r.len() != cols) {
        return Err(parse_err(*line, format!("row has {} cells, expected {cols}", r.len())));
    }
    if rows.len() != cols {
        return Err(CliError::NonSquare { rows: rows.len(), cols });
    }
    let data = rows.into_iter().flat_map(|(_, r)| r).collect();
    Ok(DenseMatrix::new(cols, data)?)
}

pub fn format_matrix_market(m: &DenseMatrix) -> String {
    let n = m.n();
    let mut out = String::from("%%MatrixMarket matrix array complex general\n");
    let _ = writeln!(out, "{n} {n}");
    for j in 0..n {
        for i in 0..n {
            let z = m.get(i, j);
            let _ = writeln!(out, "{:e} {:e}", z.re, z.im);
        }
    }
    out
}

pub fn format_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.n() {
        let cells: Vec<String> = m.row(i).iter().map(|z| format!("{:e},{:e}", z.re, z.im)).collect();
        out.push_str(&cells.join(";"));
        out.push('\n');
    }
    out
}

/// Reads a square matrix; `format` defaults to the one implied by the extension.
pub fn read_matrix(path: &Path, format: Option<Format>) -> Result<DenseMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::MatrixMarket => parse_matrix_market(&text),
        Format::Csv => parse_csv(&text),
    }
}

/// Writes `text` to `path`, refusing to replace an existing file unless `force`.
pub fn write_text(path: &Path, text: &str, force: bool) -> Result<(), CliError> {
    let mut file = if force {
        fs::File::create(path)
    } else {
        fs::OpenOptions::new().write(true).create_new(true).open(path)
    }
    .map_err(|e| {
        if e.kind() == std::io::ErrorKind::AlreadyExists {
            CliError::Exists(path.display().to_string())
        } else {
            CliError::Io(path.display().to_string(), e)
        }
    })?;
    file.write_all(text.as_bytes()).map_err(|e| CliError::Io(path.display().to_string(), e))
}

pub fn write_matrix(m: &DenseMatrix, path: &Path, format: Option<Format>, force: bool) -> Result<(), CliError> {
    let text = match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::MatrixMarket => format_matrix_market(m),
        Format::Csv => format_csv(m),
    };
    write_text(path, &text, force)
}
