//! Data tables, metrics records and file emission.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Format;
use crate::error::CliError;

/// A column of a data table. Integer columns hold lattice positions or step
/// counts; real columns are written with 17 significant digits.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Int(&'static str, Vec<i64>),
    Real(&'static str, Vec<f64>),
}

impl Column {
    fn name(&self) -> &'static str {
        match self {
            Column::Int(n, _) | Column::Real(n, _) => n,
        }
    }

    fn len(&self) -> usize {
        match self {
            Column::Int(_, v) => v.len(),
            Column::Real(_, v) => v.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DataTable {
    columns: Vec<Column>,
}

impl DataTable {
    pub fn new(columns: Vec<Column>) -> Self {
        let rows = columns.first().map_or(0, Column::len);
        assert!(columns.iter().all(|c| c.len() == rows), "ragged data table");
        Self { columns }
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Column::len)
    }

    pub fn header(&self) -> Vec<&'static str> {
        self.columns.iter().map(Column::name).collect()
    }

    /// Comma-separated, LF line endings, header first.
    pub fn to_csv(&self) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for r in 0..self.rows() {
            for (i, col) in self.columns.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match col {
                    Column::Int(_, v) => write!(out, "{}", v[r]),
                    Column::Real(_, v) => write!(out, "{:.16e}", v[r]),
                }
                .expect("writing to a String cannot fail");
            }
            out.push('\n');
        }
        out
    }

    /// `{"columns": [...], "rows": [[...], ...]}`.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = (0..self.rows())
            .map(|r| {
                Value::Array(
                    self.columns
                        .iter()
                        .map(|c| match c {
                            Column::Int(_, v) => json!(v[r]),
                            Column::Real(_, v) => json!(v[r]),
                        })
                        .collect(),
                )
            })
            .collect();
        let mut s = json!({ "columns": self.header(), "rows": rows }).to_string();
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Observables of one emitted distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub label: String,
    pub file: String,
    pub preset: String,
    pub t: usize,
    pub realizations: usize,
    /// Moments of the distribution written to `file`.
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
    pub symmetry_deviation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance_of_variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_std_dev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loc_length_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance_ratio: Option<f64>,
    pub max_norm_drift: f64,
}

/// Contents of the metrics file. Contains no timestamps so that identical
/// configurations give identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub mode: String,
    pub seed: u64,
    pub seed_mixer: &'static str,
    pub realizations: usize,
    pub runs: Vec<RunRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub localization: Vec<LocalizationRecord>,
}

/// Final localization length of a recipe curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalizationRecord {
    pub reference_theta: f64,
    pub t: usize,
    pub loc_length_ratio: f64,
    pub variance_ratio: f64,
}

/// A file to be written once all computation has finished.
#[derive(Debug, Clone, PartialEq)]
pub struct PendingFile {
    pub path: PathBuf,
    pub contents: String,
}

pub fn write_all(files: &[PendingFile]) -> Result<(), CliError> {
    for f in files {
        if let Some(parent) = f.path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(|source| CliError::Io {
                path: parent.to_path_buf(),
                source,
            })?;
        }
        std::fs::write(&f.path, &f.contents).map_err(|source| CliError::Io {
            path: f.path.clone(),
            source,
        })?;
    }
    Ok(())
}

/// `dir/name.ext` for a data file `name`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

/// Reads a CSV written by [`DataTable::to_csv`] back into named columns.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or("empty file")?
        .split(',')
        .map(str::to_owned)
        .collect();
    let mut cols = vec![Vec::new(); header.len()];
    for (n, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(format!(
                "row {} has {} fields, expected {}",
                n + 1,
                fields.len(),
                header.len()
            ));
        }
        for (col, f) in cols.iter_mut().zip(fields) {
            col.push(
                f.parse::<f64>()
                    .map_err(|e| format!("row {}: {e}", n + 1))?,
            );
        }
    }
    Ok((header, cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> DataTable {
        DataTable::new(vec![
            Column::Int("x", vec![-1, 0, 1]),
            Column::Real("p", vec![0.5, 0.0, 0.1 + 0.2]),
        ])
    }

    #[test]
    fn csv_layout() {
        let csv = table().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "x,p");
        assert_eq!(lines[1], "-1,5.0000000000000000e-1");
        assert_eq!(lines.len(), 4);
        assert!(!csv.contains('\r'));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn csv_values_round_trip_exactly() {
        let (header, cols) = read_csv(&table().to_csv()).unwrap();
        assert_eq!(header, vec!["x", "p"]);
        assert_eq!(cols[1][2].to_bits(), (0.1f64 + 0.2).to_bits());
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&table().to_json()).unwrap();
        assert_eq!(v["columns"], json!(["x", "p"]));
        assert_eq!(v["rows"][0], json!([-1, 0.5]));
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(
            sibling(Path::new("out/d.csv"), ".metrics.json"),
            PathBuf::from("out/d.metrics.json")
        );
        assert_eq!(
            sibling(Path::new("d"), ".meta.json"),
            PathBuf::from("d.meta.json")
        );
    }
}
