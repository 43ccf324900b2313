//! Deterministic output writers: one header row per CSV, shortest-roundtrip
//! float formatting, no timestamps.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use faberkit::Error;

pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<Self, Error> {
        fs::create_dir_all(root)
            .map_err(|e| Error::ConfigurationError(format!("cannot create output dir {}: {e}", root.display())))?;
        Ok(OutDir { root: root.to_path_buf() })
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf, Error> {
        let path = self.root.join(name);
        fs::write(&path, contents)
            .map_err(|e| Error::ConfigurationError(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }
}

/// CSV with a single header row; cells already formatted.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn fmt_f64(x: f64) -> String {
    let mut s = String::new();
    // shortest round-trip representation is deterministic for equal bits
    let _ = write!(s, "{x}");
    s
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}
