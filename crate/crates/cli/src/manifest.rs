//! Run manifest: what was run, with which configuration, and what it wrote.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{ensure, Context, Result};
use sha2::{Digest, Sha256};

pub struct Manifest {
    command_line: String,
    config_digest: String,
    seed: u64,
    started: f64,
    outputs: Vec<PathBuf>,
    fields: Vec<(String, String)>,
}

fn unix_now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

/// SHA-256 of the configuration text (empty text for built-in defaults).
pub fn config_digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl Manifest {
    pub fn start(config_text: &str, seed: u64) -> Self {
        let command_line = std::env::args().collect::<Vec<_>>().join(" ");
        Self {
            command_line,
            config_digest: config_digest(config_text),
            seed,
            started: unix_now(),
            outputs: Vec::new(),
            fields: Vec::new(),
        }
    }

    /// Writes `contents` to `path` and records it as an output.
    pub fn write(&mut self, path: impl AsRef<Path>, contents: impl AsRef<[u8]>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }

    pub fn field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn finish(self, path: impl AsRef<Path>) -> Result<()> {
        let mut s = String::new();
        writeln!(s, "command: {}", self.command_line)?;
        writeln!(s, "config_sha256: {}", self.config_digest)?;
        writeln!(s, "seed: {}", self.seed)?;
        writeln!(s, "start_unix_s: {:.3}", self.started)?;
        writeln!(s, "end_unix_s: {:.3}", unix_now())?;
        for (k, v) in &self.fields {
            writeln!(s, "{k}: {v}")?;
        }
        writeln!(s, "outputs:")?;
        for p in &self.outputs {
            ensure!(p.exists(), "declared output {} is missing", p.display());
            writeln!(s, "  {}", p.display())?;
        }
        let path = path.as_ref();
        std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))
    }
}
