//! Locale-independent CSV emission and the per-run manifest.
//!
//! Every CSV uses `.` as decimal separator, scientific notation with seven
//! significant digits, LF line endings, and always carries a header row.

use std::fs;
use std::path::{Path, PathBuf};

use mtfrac::{Error, Result};

/// Scientific notation with 6 fractional digits (7 significant).
pub fn fmt_sci(x: f64) -> String {
    format!("{x:.6e}")
}

/// Plain fixed formatting for order-like quantities; empty for None.
pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.4}")).unwrap_or_default()
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)
        .map_err(|e| Error::Usage(format!("cannot create output dir {}: {e}", dir.display())))
}

/// Write one CSV file with a header and pre-formatted rows.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)
        .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Collects files and parameters of one command run and writes
/// `manifest.json` into the output directory. Key order is sorted, so the
/// manifest is byte-deterministic for fixed inputs.
pub struct Manifest {
    dir: PathBuf,
    command: String,
    parameters: serde_json::Map<String, serde_json::Value>,
    files: Vec<serde_json::Value>,
}

impl Manifest {
    pub fn new(dir: &Path, command: &str) -> Self {
        Manifest {
            dir: dir.to_path_buf(),
            command: command.to_string(),
            parameters: serde_json::Map::new(),
            files: Vec::new(),
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    /// Register an emitted file with its own parameter tags.
    pub fn file(&mut self, name: &str, tags: serde_json::Value) {
        self.files.push(serde_json::json!({
            "name": name,
            "tags": tags,
        }));
    }

    pub fn write(&self) -> Result<()> {
        let doc = serde_json::json!({
            "command": self.command,
            "parameters": self.parameters,
            "files": self.files,
        });
        let path = self.dir.join("manifest.json");
        fs::write(&path, serde_json::to_string_pretty(&doc).expect("json serializes"))
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci_format_is_locale_independent_and_precise() {
        assert_eq!(fmt_sci(7.0478e-3), "7.047800e-3");
        assert_eq!(fmt_sci(0.0), "0.000000e0");
        assert_eq!(fmt_sci(-1.23456789e4), "-1.234568e4");
        assert!(!fmt_sci(1234.5).contains(','));
    }

    #[test]
    fn optional_orders_format_empty() {
        assert_eq!(fmt_opt(None), "");
        assert_eq!(fmt_opt(Some(1.13)), "1.1300");
    }

    #[test]
    fn csv_has_header_and_lf_endings() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(
            &path,
            &["a", "b"],
            &[vec!["1".into(), "2".into()], vec!["3".into(), "4".into()]],
        )
        .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "a,b\n1,2\n3,4\n");
        assert!(!text.contains('\r'));
    }
}
