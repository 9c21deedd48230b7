//! Digitally programmable magnetic synapse.
//!
//! Four input magnets with driver widths 4×, 2×, 1× and 1× of the minimum
//! size. Each magnet's orientation sets the sign of its branch, so a synapse
//! reaches every even level in [-8, 8]. One template unit equals four
//! levels: the unit weight of the noise-filter template is level 4.

use crate::error::{ensure, Error, Result};

pub const BRANCH_SIZES: [i32; 4] = [4, 2, 1, 1];
/// Synapse levels per template unit.
pub const LEVELS_PER_UNIT: i32 = 4;
pub const MAX_LEVEL: i32 = 8;
/// Sum of branch widths, in minimum widths.
pub const BRANCH_WIDTH_SUM: i32 = 8;

/// Orientation of the four input magnets (`+1`/`-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SynapseConfig {
    pub signs: [i8; 4],
}

impl SynapseConfig {
    pub fn new(signs: [i8; 4]) -> Result<Self> {
        if signs.iter().all(|&s| s == 1 || s == -1) {
            Ok(Self { signs })
        } else {
            Err(Error::InvalidArgument(format!("synapse signs must be ±1, got {signs:?}")))
        }
    }

    /// All 16 configurations in lexicographic order, `+` before `-`.
    pub fn all() -> impl Iterator<Item = SynapseConfig> {
        (0..16u8).map(|bits| {
            let mut signs = [1i8; 4];
            for (k, s) in signs.iter_mut().enumerate() {
                if bits & (1 << (3 - k)) != 0 {
                    *s = -1;
                }
            }
            SynapseConfig { signs }
        })
    }

    pub fn negated(self) -> Self {
        Self { signs: self.signs.map(|s| -s) }
    }

    pub fn hamming(self, other: SynapseConfig) -> u32 {
        self.signs.iter().zip(other.signs).filter(|(a, b)| **a != *b).count() as u32
    }
}

/// Every level the synapse can realize, ascending.
pub fn representable_weights() -> Vec<i32> {
    let mut v: Vec<i32> = SynapseConfig::all().map(decode_config).collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn is_representable(level: i32) -> bool {
    level.abs() <= MAX_LEVEL && level % 2 == 0
}

/// Dot product of the signs with the branch widths.
pub fn decode_config(c: SynapseConfig) -> i32 {
    c.signs.iter().zip(BRANCH_SIZES).map(|(&s, w)| s as i32 * w).sum()
}

/// Canonical configuration for `level`: the first match in the order of
/// [`SynapseConfig::all`], i.e. `+` preferred at the earliest branch.
pub fn encode_weight(level: i32) -> Result<SynapseConfig> {
    SynapseConfig::all()
        .find(|&c| decode_config(c) == level)
        .ok_or(Error::NotRepresentable(level))
}

/// Nearest representable level after clamping to `±max_level`; ties round
/// away from zero.
pub fn quantize_weight(w: f64, max_level: i32) -> i32 {
    let clamped = w.clamp(-(max_level as f64), max_level as f64);
    let q = 2 * (clamped / 2.0).round() as i32;
    q.clamp(-max_level, max_level)
}

/// A programmable synapse with its current magnet state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProgrammableSynapse {
    config: SynapseConfig,
}

impl ProgrammableSynapse {
    pub fn new(level: i32) -> Result<Self> {
        Ok(Self { config: encode_weight(level)? })
    }

    pub fn config(&self) -> SynapseConfig {
        self.config
    }

    pub fn level(&self) -> i32 {
        decode_config(self.config)
    }

    /// Assigns the canonical configuration of `target`; returns the number
    /// of input magnets that had to be reoriented.
    pub fn program(&mut self, target: i32) -> Result<u32> {
        let next = encode_weight(target)?;
        let events = self.config.hamming(next);
        self.config = next;
        Ok(events)
    }
}

/// Unit-width driver IV characteristic with a bias point.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveModel {
    pub v_drive: f64,
    pub size_multiplier: u32,
    /// `(voltage, current)` anchors for a minimum-width driver.
    pub iv_table: Vec<(f64, f64)>,
}

pub const DEFAULT_IV: [(f64, f64); 2] = [(0.01, 2.8e-6), (1.0, 75e-6)];

impl Default for DriveModel {
    fn default() -> Self {
        Self {
            v_drive: 0.1,
            size_multiplier: 1,
            iv_table: DEFAULT_IV.to_vec(),
        }
    }
}

impl DriveModel {
    pub fn validate(&self) -> Result<()> {
        if self.iv_table.len() < 2 {
            return Err(Error::InvalidArgument("IV table needs at least two anchors".into()));
        }
        for (v, i) in &self.iv_table {
            ensure(*v > 0.0, "drive.iv voltage", *v, "must be > 0")?;
            ensure(*i > 0.0, "drive.iv current", *i, "must be > 0")?;
        }
        for w in self.iv_table.windows(2) {
            if !(w[1].0 > w[0].0 && w[1].1 > w[0].1) {
                return Err(Error::InvalidArgument(
                    "IV table must be strictly increasing in voltage and current".into(),
                ));
            }
        }
        ensure(self.size_multiplier >= 1, "drive.size", self.size_multiplier as f64, "must be >= 1")
    }

    pub fn span(&self) -> (f64, f64) {
        (self.iv_table[0].0, self.iv_table[self.iv_table.len() - 1].0)
    }

    pub fn at(&self, v_drive: f64, size_multiplier: u32) -> Self {
        Self { v_drive, size_multiplier, iv_table: self.iv_table.clone() }
    }

    /// Current of a minimum-width driver at `v`, log-log interpolated.
    pub fn unit_current(&self, v: f64) -> Result<f64> {
        let (lo, hi) = self.span();
        if !(lo..=hi).contains(&v) {
            return Err(Error::VoltageOutOfSpan { v, lo, hi });
        }
        for w in self.iv_table.windows(2) {
            let ((v0, i0), (v1, i1)) = (w[0], w[1]);
            if v == v0 {
                return Ok(i0);
            }
            if v == v1 {
                return Ok(i1);
            }
            if v > v0 && v < v1 {
                let t = (v / v0).ln() / (v1 / v0).ln();
                return Ok((i0.ln() + t * (i1 / i0).ln()).exp());
            }
        }
        unreachable!("voltage inside the span matches a segment")
    }
}

/// Charge current of a driver of `size_multiplier` minimum widths; zero when
/// the transistor is off.
pub fn drive_current(d: &DriveModel, input_on: bool) -> Result<f64> {
    if !input_on {
        return Ok(0.0);
    }
    Ok(d.size_multiplier as f64 * d.unit_current(d.v_drive)?)
}
