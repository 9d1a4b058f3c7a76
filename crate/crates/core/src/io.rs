//! Bit-exact binary formats for symbols (`QHAGRID1`), operators (`QHAOP1`)
//! and window vectors (`QHAVEC1`).
//!
//! Layout: an ASCII magic line, a one-line JSON header
//! `{"N":…,"L":…,"kind":…}`, then little-endian `f64` pairs `(re, im)` in
//! row-major order.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QhaError, Result};
use crate::operators::{OperatorMatrix, WindowVector};
use crate::phase_space::{PhaseGrid, SymbolGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Symbol,
    Operator,
    Vector,
}

impl FileKind {
    pub fn magic(self) -> &'static str {
        match self {
            FileKind::Symbol => "QHAGRID1",
            FileKind::Operator => "QHAOP1",
            FileKind::Vector => "QHAVEC1",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FileKind::Symbol => "symbol",
            FileKind::Operator => "operator",
            FileKind::Vector => "vector",
        }
    }

    fn pairs(self, n: usize) -> usize {
        match self {
            FileKind::Vector => n,
            _ => n * n,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "L")]
    half_width: f64,
    kind: String,
}

fn format_error(offset: usize, message: impl Into<String>) -> QhaError {
    QhaError::Format {
        offset: offset as u64,
        message: message.into(),
    }
}

/// Serializes `values` with the given kind and grid.
pub fn encode(kind: FileKind, grid: &PhaseGrid, values: &[Complex64]) -> Vec<u8> {
    let header = Header {
        n: grid.n(),
        half_width: grid.half_width(),
        kind: kind.name().into(),
    };
    let mut out = Vec::with_capacity(64 + values.len() * 16);
    out.extend_from_slice(kind.magic().as_bytes());
    out.push(b'\n');
    out.extend_from_slice(
        serde_json::to_string(&header)
            .expect("header serializes")
            .as_bytes(),
    );
    out.push(b'\n');
    for v in values {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    out
}

fn split_line(bytes: &[u8], start: usize, what: &str) -> Result<(usize, usize)> {
    match bytes[start..].iter().position(|&b| b == b'\n') {
        Some(len) => Ok((start + len, start + len + 1)),
        None => Err(format_error(
            bytes.len(),
            format!("unterminated {what} line"),
        )),
    }
}

/// Parses bytes produced by [`encode`].
pub fn decode(kind: FileKind, bytes: &[u8]) -> Result<(PhaseGrid, Vec<Complex64>)> {
    let (magic_end, header_start) = split_line(bytes, 0, "magic")?;
    if &bytes[..magic_end] != kind.magic().as_bytes() {
        return Err(format_error(
            0,
            format!("bad magic, expected {}", kind.magic()),
        ));
    }
    let (header_end, payload_start) = split_line(bytes, header_start, "header")?;
    let header: Header = serde_json::from_slice(&bytes[header_start..header_end])
        .map_err(|e| format_error(header_start + e.column().saturating_sub(1), e.to_string()))?;
    if header.kind != kind.name() {
        return Err(format_error(
            header_start,
            format!("kind {:?}, expected {:?}", header.kind, kind.name()),
        ));
    }
    let grid = PhaseGrid::new(header.n, header.half_width)
        .map_err(|e| format_error(header_start, e.to_string()))?;
    let expected = kind.pairs(grid.n()) * 16;
    let payload = &bytes[payload_start..];
    if payload.len() != expected {
        return Err(format_error(
            payload_start + payload.len().min(expected),
            format!("payload has {} bytes, expected {expected}", payload.len()),
        ));
    }
    let mut values = Vec::with_capacity(expected / 16);
    for (i, chunk) in payload.chunks_exact(16).enumerate() {
        let re = f64::from_le_bytes(chunk[..8].try_into().expect("8 bytes"));
        let im = f64::from_le_bytes(chunk[8..].try_into().expect("8 bytes"));
        if !(re.is_finite() && im.is_finite()) {
            return Err(format_error(payload_start + 16 * i, "non-finite value"));
        }
        values.push(Complex64::new(re, im));
    }
    Ok((grid, values))
}

fn read(kind: FileKind, path: &Path) -> Result<(PhaseGrid, Vec<Complex64>)> {
    let bytes = fs::read(path).map_err(|source| QhaError::Io {
        path: path.into(),
        source,
    })?;
    decode(kind, &bytes)
}

fn write(kind: FileKind, path: &Path, grid: &PhaseGrid, values: &[Complex64]) -> Result<()> {
    let io_err = |source| QhaError::Io {
        path: path.into(),
        source,
    };
    let mut file = fs::File::create(path).map_err(io_err)?;
    file.write_all(&encode(kind, grid, values)).map_err(io_err)
}

pub fn read_symbol(path: impl AsRef<Path>) -> Result<SymbolGrid> {
    let (grid, values) = read(FileKind::Symbol, path.as_ref())?;
    SymbolGrid::new(grid, values)
}

pub fn write_symbol(path: impl AsRef<Path>, s: &SymbolGrid) -> Result<()> {
    write(FileKind::Symbol, path.as_ref(), s.grid(), s.values())
}

pub fn read_operator(path: impl AsRef<Path>) -> Result<OperatorMatrix> {
    let (grid, values) = read(FileKind::Operator, path.as_ref())?;
    OperatorMatrix::new(grid, values)
}

pub fn write_operator(path: impl AsRef<Path>, t: &OperatorMatrix) -> Result<()> {
    write(FileKind::Operator, path.as_ref(), t.grid(), t.kernel())
}

pub fn read_vector(path: impl AsRef<Path>) -> Result<WindowVector> {
    let (grid, values) = read(FileKind::Vector, path.as_ref())?;
    WindowVector::new(grid, values)
}

pub fn write_vector(path: impl AsRef<Path>, f: &WindowVector) -> Result<()> {
    write(FileKind::Vector, path.as_ref(), f.grid(), f.values())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (PhaseGrid, Vec<Complex64>) {
        let g = PhaseGrid::new(8, 2.0).unwrap();
        let v = (0..64)
            .map(|i| Complex64::new(i as f64 / 3.0, -(i as f64).sqrt()))
            .collect();
        (g, v)
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let (g, v) = sample();
        let (g2, v2) = decode(FileKind::Symbol, &encode(FileKind::Symbol, &g, &v)).unwrap();
        assert_eq!(g, g2);
        assert!(v
            .iter()
            .zip(&v2)
            .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()));
    }

    #[test]
    fn bad_magic_reports_offset_zero() {
        let (g, v) = sample();
        let bytes = encode(FileKind::Symbol, &g, &v);
        match decode(FileKind::Operator, &bytes) {
            Err(QhaError::Format { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn truncated_payload_is_rejected() {
        let (g, v) = sample();
        let mut bytes = encode(FileKind::Symbol, &g, &v);
        bytes.truncate(bytes.len() - 3);
        assert!(matches!(
            decode(FileKind::Symbol, &bytes),
            Err(QhaError::Format { .. })
        ));
    }

    #[test]
    fn wrong_kind_rejected() {
        let (g, v) = sample();
        let mut bytes = encode(FileKind::Symbol, &g, &v);
        let text = String::from_utf8_lossy(&bytes).into_owned();
        let pos = text.find("symbol").unwrap();
        bytes[pos..pos + 6].copy_from_slice(b"vector");
        assert!(matches!(
            decode(FileKind::Symbol, &bytes),
            Err(QhaError::Format { .. })
        ));
    }
}
