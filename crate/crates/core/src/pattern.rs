//! Bipolar pixel grids and their text formats.
//!
//! Convention used everywhere: `+1` = black = magnetization up,
//! `-1` = white = magnetization down.

use std::fmt::Write as _;

use rand::seq::index;

use crate::error::{Error, Result};
use crate::streams;

/// Rectangular grid of bipolar pixels, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    rows: usize,
    cols: usize,
    pixels: Vec<i8>,
}

impl Pattern {
    pub fn new(rows: usize, cols: usize, pixels: Vec<i8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Pattern("grid must be non-empty".into()));
        }
        if pixels.len() != rows * cols {
            return Err(Error::Pattern(format!(
                "{} pixels for a {rows}x{cols} grid",
                pixels.len()
            )));
        }
        if let Some(p) = pixels.iter().find(|&&p| p != 1 && p != -1) {
            return Err(Error::Pattern(format!("pixel value {p} is not bipolar")));
        }
        Ok(Self { rows, cols, pixels })
    }

    pub fn filled(rows: usize, cols: usize, value: i8) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[i8] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.pixels[row * self.cols + col]
    }

    pub fn same_shape(&self, other: &Pattern) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn check_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows == rows && self.cols == cols {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                expected_rows: rows,
                expected_cols: cols,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn negated(&self) -> Pattern {
        Pattern {
            rows: self.rows,
            cols: self.cols,
            pixels: self.pixels.iter().map(|p| -p).collect(),
        }
    }

    /// Number of differing pixels. Panics on shape mismatch.
    pub fn hamming(&self, other: &Pattern) -> usize {
        assert!(self.same_shape(other), "hamming distance needs equal shapes");
        self.pixels
            .iter()
            .zip(&other.pixels)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Parses the `.pat` text format: `#` = +1, `.` = -1, one row per line.
    /// Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = 0;
        let mut cols = None;
        let mut pixels = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let before = pixels.len();
            for ch in line.chars() {
                match ch {
                    '#' => pixels.push(1),
                    '.' => pixels.push(-1),
                    other => {
                        return Err(Error::Pattern(format!(
                            "line {}: illegal character {other:?}",
                            lineno + 1
                        )))
                    }
                }
            }
            let width = pixels.len() - before;
            match cols {
                None => cols = Some(width),
                Some(c) if c != width => {
                    return Err(Error::Pattern(format!(
                        "line {}: ragged row ({width} columns, expected {c})",
                        lineno + 1
                    )))
                }
                _ => {}
            }
            rows += 1;
        }
        let cols = cols.ok_or_else(|| Error::Pattern("no rows".into()))?;
        Self::new(rows, cols, pixels)
    }

    /// Renders the `.pat` text format (one trailing newline per row).
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for row in self.pixels.chunks(self.cols) {
            s.extend(row.iter().map(|&p| if p > 0 { '#' } else { '.' }));
            s.push('\n');
        }
        s
    }

    /// Flips exactly `round(fraction * N)` distinct pixels chosen uniformly
    /// without replacement from the `noise` sub-stream of `seed`.
    pub fn with_noise(&self, fraction: f64, seed: u64) -> Result<Pattern> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::OutOfRange {
                name: "noise fraction",
                value: fraction,
                rule: "must lie in [0, 1]",
            });
        }
        let n = self.len();
        let flips = (fraction * n as f64).round() as usize;
        let mut rng = streams::stream(seed, "noise", 0);
        let mut out = self.clone();
        for i in index::sample(&mut rng, n, flips).into_iter() {
            out.pixels[i] = -out.pixels[i];
        }
        Ok(out)
    }
}

/// See [`Pattern::parse`].
pub fn load_pattern(text: &str) -> Result<Pattern> {
    Pattern::parse(text)
}

/// See [`Pattern::to_text`].
pub fn save_pattern(p: &Pattern) -> String {
    p.to_text()
}

/// See [`Pattern::with_noise`].
pub fn add_noise(p: &Pattern, fraction: f64, seed: u64) -> Result<Pattern> {
    p.with_noise(fraction, seed)
}

/// Plain-text PGM (P2) frame of a magnetization map: `mz = -1` (white) maps
/// to 0 and `mz = +1` (black) maps to 255.
pub fn frame_p2(rows: usize, cols: usize, mz: &[f64]) -> String {
    assert_eq!(mz.len(), rows * cols);
    let mut s = format!("P2\n{cols} {rows}\n255\n");
    for row in mz.chunks(cols) {
        let line: Vec<String> = row
            .iter()
            .map(|&m| {
                let v = ((m.clamp(-1.0, 1.0) + 1.0) * 0.5 * 255.0).round() as u8;
                v.to_string()
            })
            .collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}
