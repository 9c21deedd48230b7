//! CNN templates: 3×3 feedback (A) and feed-forward (B) weights plus a bias,
//! either shared by every cell or stored per cell.
//!
//! Weights are in template units (the unit weight drives `i0`). Quantized
//! sets hold only multiples of 1/4 that map onto synapse levels.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::synapse::{is_representable, quantize_weight, LEVELS_PER_UNIT, MAX_LEVEL};

pub type Kernel = [[f64; 3]; 3];

/// One cell's `(A, B, I)`. `a[dr+1][dc+1]` weights the neighbor at offset
/// `(dr, dc)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Template {
    pub a: Kernel,
    pub b: Kernel,
    pub i: f64,
}

impl Template {
    pub fn negated(&self) -> Template {
        Template {
            a: self.a.map(|r| r.map(|w| -w)),
            b: self.b.map(|r| r.map(|w| -w)),
            i: -self.i,
        }
    }

    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.a.iter().chain(self.b.iter()).flatten().copied().chain(std::iter::once(self.i))
    }

    /// Synapse levels (A row-major, B row-major, I); `None` if any weight is
    /// not a representable level.
    pub fn levels(&self) -> Option<[i32; 19]> {
        let mut out = [0i32; 19];
        for (slot, w) in out.iter_mut().zip(self.weights()) {
            let l = w * LEVELS_PER_UNIT as f64;
            if l.fract() != 0.0 || !is_representable(l as i32) {
                return None;
            }
            *slot = l as i32;
        }
        Some(out)
    }

    pub fn from_levels(levels: &[i32; 19]) -> Result<Template> {
        if let Some(&bad) = levels.iter().find(|&&l| !is_representable(l)) {
            return Err(Error::NotRepresentable(bad));
        }
        let unit = LEVELS_PER_UNIT as f64;
        let mut t = Template::default();
        for k in 0..9 {
            t.a[k / 3][k % 3] = levels[k] as f64 / unit;
            t.b[k / 3][k % 3] = levels[9 + k] as f64 / unit;
        }
        t.i = levels[18] as f64 / unit;
        Ok(t)
    }

    /// Scales each weight to levels, rounds to the nearest representable
    /// level and converts back.
    pub fn quantized(&self) -> Template {
        let q = |w: f64| quantize_weight(w * LEVELS_PER_UNIT as f64, MAX_LEVEL) as f64 / LEVELS_PER_UNIT as f64;
        Template {
            a: self.a.map(|r| r.map(q)),
            b: self.b.map(|r| r.map(q)),
            i: q(self.i),
        }
    }

    /// `Σ|A| + Σ|B| + |I|`.
    pub fn gross_weight(&self) -> f64 {
        self.weights().map(f64::abs).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TemplateSet {
    SpaceInvariant(Template),
    SpaceVarying { rows: usize, cols: usize, cells: Vec<Template> },
}

impl TemplateSet {
    pub fn space_varying(rows: usize, cols: usize, cells: Vec<Template>) -> Result<Self> {
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return Err(Error::Templates(format!(
                "{} cell templates for a {rows}x{cols} grid",
                cells.len()
            )));
        }
        Ok(TemplateSet::SpaceVarying { rows, cols, cells })
    }

    pub fn is_space_varying(&self) -> bool {
        matches!(self, TemplateSet::SpaceVarying { .. })
    }

    /// `None` for space-invariant sets, which fit any grid.
    pub fn shape(&self) -> Option<(usize, usize)> {
        match self {
            TemplateSet::SpaceInvariant(_) => None,
            TemplateSet::SpaceVarying { rows, cols, .. } => Some((*rows, *cols)),
        }
    }

    pub fn check_shape(&self, rows: usize, cols: usize) -> Result<()> {
        match self.shape() {
            Some((r, c)) if (r, c) != (rows, cols) => Err(Error::ShapeMismatch {
                expected_rows: rows,
                expected_cols: cols,
                rows: r,
                cols: c,
            }),
            _ => Ok(()),
        }
    }

    /// Template of cell `idx` (row-major).
    #[inline]
    pub fn cell(&self, idx: usize) -> &Template {
        match self {
            TemplateSet::SpaceInvariant(t) => t,
            TemplateSet::SpaceVarying { cells, .. } => &cells[idx],
        }
    }

    pub fn templates(&self) -> &[Template] {
        match self {
            TemplateSet::SpaceInvariant(t) => std::slice::from_ref(t),
            TemplateSet::SpaceVarying { cells, .. } => cells,
        }
    }

    fn map(&self, f: impl Fn(&Template) -> Template) -> TemplateSet {
        match self {
            TemplateSet::SpaceInvariant(t) => TemplateSet::SpaceInvariant(f(t)),
            TemplateSet::SpaceVarying { rows, cols, cells } => TemplateSet::SpaceVarying {
                rows: *rows,
                cols: *cols,
                cells: cells.iter().map(f).collect(),
            },
        }
    }

    pub fn negated(&self) -> TemplateSet {
        self.map(Template::negated)
    }

    pub fn quantized(&self) -> TemplateSet {
        self.map(Template::quantized)
    }

    pub fn is_quantized(&self) -> bool {
        self.templates().iter().all(|t| t.levels().is_some())
    }

    /// Text form: a header, a shape line (`shape R C` or `invariant`), then
    /// one line of 19 integer levels per cell (A, B row-major, then I).
    pub fn to_text(&self) -> Result<String> {
        let mut s = String::from("spincnn-templates 1\n");
        match self.shape() {
            None => s.push_str("invariant\n"),
            Some((r, c)) => writeln!(s, "shape {r} {c}").unwrap(),
        }
        s.push_str("# a00 a01 a02 a10 a11 a12 a20 a21 a22 | b00 .. b22 | i   (synapse levels, 4 = unit weight)\n");
        for t in self.templates() {
            let levels = t.levels().ok_or_else(|| {
                Error::Templates("template holds weights that are not synapse levels; quantize first".into())
            })?;
            let line: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        Ok(s)
    }

    pub fn parse(text: &str) -> Result<TemplateSet> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let syntax = |line, msg: &str| Error::Syntax { line, msg: msg.to_string() };
        match lines.next() {
            Some((_, "spincnn-templates 1")) => {}
            Some((n, _)) => return Err(syntax(n, "expected header `spincnn-templates 1`")),
            None => return Err(Error::Templates("empty template file".into())),
        }
        let (n, shape_line) = lines.next().ok_or_else(|| Error::Templates("missing shape line".into()))?;
        let shape = match shape_line.split_whitespace().collect::<Vec<_>>()[..] {
            ["invariant"] => None,
            ["shape", r, c] => {
                let r: usize = r.parse().map_err(|_| syntax(n, "bad row count"))?;
                let c: usize = c.parse().map_err(|_| syntax(n, "bad column count"))?;
                Some((r, c))
            }
            _ => return Err(syntax(n, "expected `shape R C` or `invariant`")),
        };
        let mut cells = Vec::new();
        for (n, line) in lines {
            let vals: Vec<i32> = line
                .split_whitespace()
                .map(|t| t.parse::<i32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| syntax(n, "levels must be integers"))?;
            let levels: [i32; 19] = vals
                .try_into()
                .map_err(|_| syntax(n, "expected 19 levels (9 A, 9 B, 1 I)"))?;
            cells.push(Template::from_levels(&levels).map_err(|e| syntax(n, &e.to_string()))?);
        }
        match shape {
            None if cells.len() == 1 => Ok(TemplateSet::SpaceInvariant(cells[0])),
            None => Err(Error::Templates(format!("invariant set needs 1 line, found {}", cells.len()))),
            Some((r, c)) => TemplateSet::space_varying(r, c, cells),
        }
    }
}
