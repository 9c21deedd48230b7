use thiserror::Error;

/// Errors produced anywhere in the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: unknown key `{key}` in section [{section}]")]
    UnknownKey {
        line: usize,
        section: String,
        key: String,
    },

    #[error("{name} = {value}: {rule}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        rule: &'static str,
    },

    #[error("pattern: {0}")]
    Pattern(String),

    #[error("templates: {0}")]
    Templates(String),

    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("time step {dt:e} s exceeds the stability limit {limit:e} s")]
    StepSize { dt: f64, limit: f64 },

    #[error("critical current bracket failed: no switching up to {upper:e} A")]
    Bracket { upper: f64 },

    #[error("singular system: {0}")]
    Singular(String),

    #[error("weight {0} is not representable by the 4-magnet synapse")]
    NotRepresentable(i32),

    #[error("drive voltage {v} V outside IV table span [{lo}, {hi}] V")]
    VoltageOutOfSpan { v: f64, lo: f64, hi: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("no delay overlap within 2x (spin {spin:e} s, nearest cmos {cmos:e} s)")]
    NoDelayOverlap { spin: f64, cmos: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure(cond: bool, name: &'static str, value: f64, rule: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value, rule })
    }
}
