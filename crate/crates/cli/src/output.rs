//! Output files. Every file carries the SHA-256 of the configuration text and
//! the cutoffs it was computed with: as `#` lines in CSV, under `meta` in JSON.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config_sha256: String,
    pub threads: usize,
    pub word_length: usize,
    pub inner: usize,
    pub delta_word_length: usize,
    pub variant: oddzeta::Variant,
    pub swap_characters: bool,
}

impl Meta {
    pub fn new(command: &'static str, config_text: &str, cfg: &RunConfig) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config_sha256: hex::encode(Sha256::digest(config_text.as_bytes())),
            threads: cfg.threads,
            word_length: cfg.cutoffs.word_length,
            inner: cfg.cutoffs.inner,
            delta_word_length: cfg.cutoffs.delta_word_length,
            variant: cfg.zeta.variant,
            swap_characters: cfg.zeta.swap_characters,
        }
    }

    fn csv_preamble(&self) -> String {
        let value = serde_json::to_value(self).expect("metadata serializes");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                let v = v.as_str().map_or_else(|| v.to_string(), str::to_string);
                out.push_str(&format!("# {k}: {v}\n"));
            }
        }
        out
    }
}

pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::Io(format!("{}: {e}", root.display())))?;
        Ok(Self { root: root.to_path_buf() })
    }

    fn write(&self, name: &str, text: &str) -> Result<PathBuf, CliError> {
        let path = self.root.join(name);
        fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }

    pub fn write_csv(&self, name: &str, meta: &Meta, header: &str, rows: &[String]) -> Result<PathBuf, CliError> {
        let mut text = meta.csv_preamble();
        text.push_str(header);
        text.push('\n');
        for r in rows {
            text.push_str(r);
            text.push('\n');
        }
        self.write(name, &text)
    }

    pub fn write_json(&self, name: &str, value: &serde_json::Value) -> Result<PathBuf, CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        self.write(name, &text)
    }
}

/// Shortest round-trip float formatting; `nan` for undefined cells.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:?}")
    }
}
