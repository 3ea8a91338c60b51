//! Deterministic artifact writing: fixed-precision numeric formatting,
//! streaming row writes with periodic flushes, and the run manifest with
//! per-output checksums.

use sha2::{Digest, Sha256};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::CliError;

/// Rows buffered between explicit flushes, so long scans stay
/// inspectable mid-run.
const FLUSH_BLOCK: usize = 256;

/// A numeric cell with 12 significant digits, locale-independent.
/// Non-finite values render as empty cells (validity gaps).
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    if x == 0.0 {
        return "0.00000000000e0".into();
    }
    format!("{x:.11e}")
}

/// An optional cell: empty when the value is absent.
pub fn sig12_opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

/// One output file, hashed as it is written.
pub struct OutputFile {
    name: String,
    writer: BufWriter<File>,
    hasher: Sha256,
    rows_since_flush: usize,
}

impl OutputFile {
    pub fn create(dir: &Path, name: &str) -> Result<Self, CliError> {
        let path = dir.join(name);
        let file = File::create(&path)
            .map_err(|e| CliError::Run(format!("cannot create {}: {e}", path.display())))?;
        Ok(Self {
            name: name.to_owned(),
            writer: BufWriter::new(file),
            hasher: Sha256::new(),
            rows_since_flush: 0,
        })
    }

    pub fn write_line(&mut self, line: &str) -> Result<(), CliError> {
        self.writer
            .write_all(line.as_bytes())
            .and_then(|()| self.writer.write_all(b"\n"))
            .map_err(|e| CliError::Run(format!("write to {}: {e}", self.name)))?;
        self.hasher.update(line.as_bytes());
        self.hasher.update(b"\n");
        self.rows_since_flush += 1;
        if self.rows_since_flush >= FLUSH_BLOCK {
            self.rows_since_flush = 0;
            self.writer
                .flush()
                .map_err(|e| CliError::Run(format!("flush {}: {e}", self.name)))?;
        }
        Ok(())
    }

    /// Flush, close, and report (name, sha256 hex digest).
    pub fn finish(mut self) -> Result<(String, String), CliError> {
        self.writer
            .flush()
            .map_err(|e| CliError::Run(format!("flush {}: {e}", self.name)))?;
        Ok((self.name, hex::encode(self.hasher.finalize())))
    }
}

/// Collects output checksums and writes `manifest.json` once the whole
/// run has completed; an aborted run leaves no manifest behind.
pub struct ManifestBuilder {
    out_dir: PathBuf,
    config_sha256: String,
    outputs: Vec<(String, String)>,
}

impl ManifestBuilder {
    pub fn new(out_dir: &Path, config_bytes: &[u8]) -> Self {
        Self {
            out_dir: out_dir.to_owned(),
            config_sha256: hex::encode(Sha256::digest(config_bytes)),
            outputs: Vec::new(),
        }
    }

    pub fn record(&mut self, file: OutputFile) -> Result<(), CliError> {
        let entry = file.finish()?;
        self.outputs.push(entry);
        Ok(())
    }

    /// Write a whole string as one output file and record it.
    pub fn write_text(&mut self, name: &str, content: &str) -> Result<(), CliError> {
        let mut file = OutputFile::create(&self.out_dir, name)?;
        for line in content.lines() {
            file.write_line(line)?;
        }
        self.record(file)
    }

    pub fn out_dir(&self) -> &Path {
        &self.out_dir
    }

    pub fn finish(self) -> Result<(), CliError> {
        let outputs: serde_json::Map<String, serde_json::Value> = self
            .outputs
            .iter()
            .map(|(name, digest)| (name.clone(), serde_json::Value::String(digest.clone())))
            .collect();
        let manifest = serde_json::json!({
            "toolkit_version": env!("CARGO_PKG_VERSION"),
            "config_sha256": self.config_sha256,
            "timestamp": chrono::Utc::now().to_rfc3339(),
            "outputs": outputs,
        });
        let path = self.out_dir.join("manifest.json");
        std::fs::write(
            &path,
            format!("{}\n", serde_json::to_string_pretty(&manifest).unwrap()),
        )
        .map_err(|e| CliError::Run(format!("cannot write {}: {e}", path.display())))
    }
}
