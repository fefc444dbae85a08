//! Deterministic output writing: CSV with `#`-comment headers and fixed
//! 17-significant-digit floats, JSON reports with a versioned `schema` field,
//! and the run manifest that makes every artifact regenerable.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

/// 17 significant digits: round-trips every f64 bit pattern.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct CsvWriter {
    buf: String,
}

impl CsvWriter {
    pub fn new() -> Self {
        Self { buf: String::new() }
    }

    pub fn comment(&mut self, line: &str) -> &mut Self {
        self.buf.push_str("# ");
        self.buf.push_str(line);
        self.buf.push('\n');
        self
    }

    pub fn header(&mut self, cols: &[&str]) -> &mut Self {
        self.buf.push_str(&cols.join(","));
        self.buf.push('\n');
        self
    }

    pub fn row(&mut self, values: &[f64]) -> &mut Self {
        let cells: Vec<String> = values.iter().map(|v| fmt_f64(*v)).collect();
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
        self
    }

    pub fn row_mixed(&mut self, cells: &[String]) -> &mut Self {
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
        self
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.buf.as_bytes())
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("serializing report")?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path)
        .with_context(|| format!("creating {}", path.display()))?;
    f.write_all(bytes)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Run manifest: the full resolved config plus code version and run
/// parameters. Two runs with identical manifests produce byte-identical
/// outputs, so nothing time- or host-dependent belongs here.
#[derive(Serialize)]
pub struct Manifest {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub taper: String,
    pub threads: Option<usize>,
    pub config: BTreeMap<String, BTreeMap<String, String>>,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn new(command: &str, taper: String, threads: Option<usize>) -> Self {
        Self {
            schema: "fracwave/manifest/v1",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            taper,
            threads,
            config: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }
}

/// Resolve the output directory: `--out`, else `FRACWAVE_OUT`, else `./out`.
pub fn resolve_out_dir(flag: Option<PathBuf>) -> Result<PathBuf> {
    let dir = flag
        .or_else(|| std::env::var_os("FRACWAVE_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    fs::create_dir_all(&dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    Ok(dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_17_significant_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.05), "-5.0000000000000003e-2");
        let v = std::f64::consts::PI;
        assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
    }
}
