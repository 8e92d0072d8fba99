//! Plain-text point files: one `x y w` line per point, `#` starts a comment
//! line, and ids follow data-line order from 0.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{validate_points, WeightedPoint};

pub fn parse_points(text: &str) -> Result<Vec<WeightedPoint>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::Parse { line: i + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [x, y, w] = fields[..] else {
            return Err(bad(format!("expected 3 fields `x y w`, found {}", fields.len())));
        };
        let x: f64 = x.parse().map_err(|_| bad(format!("bad x {x:?}")))?;
        let y: f64 = y.parse().map_err(|_| bad(format!("bad y {y:?}")))?;
        let w: u64 = w.parse().map_err(|_| bad(format!("bad weight {w:?}")))?;
        let p = WeightedPoint::new(out.len() as u64, x, y, w).map_err(|e| bad(e.to_string()))?;
        out.push(p);
    }
    Ok(out)
}

pub fn read_points(path: &Path) -> Result<Vec<WeightedPoint>> {
    parse_points(&fs::read_to_string(path)?)
}

/// Writes points in id order of appearance. Floats use the shortest text
/// that reads back to the same value.
pub fn write_points<W: Write>(mut out: W, points: &[WeightedPoint]) -> Result<()> {
    validate_points(points)?;
    for p in points {
        writeln!(out, "{} {} {}", p.x, p.y, p.w)?;
    }
    out.flush()?;
    Ok(())
}

pub fn format_points(points: &[WeightedPoint]) -> Result<String> {
    let mut buf = Vec::new();
    write_points(&mut buf, points)?;
    Ok(String::from_utf8(buf).expect("formatted numbers are ASCII"))
}
