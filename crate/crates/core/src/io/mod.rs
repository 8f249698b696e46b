//! Reading, writing, normalizing and generating datasets.
//!
//! Text format: one point per line, attributes separated by commas or
//! whitespace, optionally with an integer class label in the first or last
//! column. Blank lines and lines starting with `#` are skipped.

mod generate;
mod manifest;

pub use generate::{generate, ClusterSpec, GeneratorSpec};
pub use manifest::{load_manifest_entry, parse_manifest, ManifestEntry};

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::{Dataset, Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Delimiter {
    /// Comma if the line contains one, whitespace otherwise.
    #[default]
    Auto,
    Whitespace,
    Comma,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LabelColumn {
    #[default]
    None,
    First,
    Last,
}

impl std::str::FromStr for LabelColumn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(LabelColumn::None),
            "first" => Ok(LabelColumn::First),
            "last" => Ok(LabelColumn::Last),
            other => Err(Error::Config(format!("unknown label column `{other}`"))),
        }
    }
}

/// Location and layout of a dataset file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDatasetFile {
    pub path: PathBuf,
    pub delimiter: Delimiter,
    pub label_column: LabelColumn,
}

impl RawDatasetFile {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            delimiter: Delimiter::Auto,
            label_column: LabelColumn::None,
        }
    }

    pub fn labels(mut self, column: LabelColumn) -> Self {
        self.label_column = column;
        self
    }
}

pub fn load(file: &RawDatasetFile) -> Result<Dataset> {
    let text = std::fs::read_to_string(&file.path)?;
    parse_dataset(&text, file.delimiter, file.label_column)
}

/// Parses dataset text; errors carry the 1-based line number.
pub fn parse_dataset(text: &str, delimiter: Delimiter, labels: LabelColumn) -> Result<Dataset> {
    let mut points = Vec::new();
    let mut label_values = Vec::new();
    let mut width = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let comma = match delimiter {
            Delimiter::Comma => true,
            Delimiter::Whitespace => false,
            Delimiter::Auto => line.contains(','),
        };
        let cells: Vec<&str> = if comma {
            line.split(',').map(str::trim).collect()
        } else {
            line.split_whitespace().collect()
        };
        match width {
            None => width = Some(cells.len()),
            Some(w) if w != cells.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("{} columns, expected {w}", cells.len()),
                })
            }
            Some(_) => {}
        }
        let (label, attrs) = match labels {
            LabelColumn::None => (None, &cells[..]),
            LabelColumn::First => (cells.first(), cells.get(1..).unwrap_or(&[])),
            LabelColumn::Last => (
                cells.last(),
                cells.get(..cells.len().saturating_sub(1)).unwrap_or(&[]),
            ),
        };
        if attrs.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                message: "no attribute columns".into(),
            });
        }
        if let Some(cell) = label {
            let v = parse_label(cell).ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("label `{cell}` is not an integer"),
            })?;
            label_values.push(v);
        }
        let mut point = Vec::with_capacity(attrs.len());
        for cell in attrs {
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{cell}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("`{cell}` is not finite"),
                });
            }
            point.push(v);
        }
        points.push(point);
    }
    if points.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no data rows".into(),
        });
    }
    let labels = (labels != LabelColumn::None).then_some(label_values);
    Dataset::new(points, labels)
}

/// Accepts `7` as well as `7.0`, which some exporters write for class ids.
fn parse_label(cell: &str) -> Option<i64> {
    cell.parse::<i64>().ok().or_else(|| {
        let v: f64 = cell.parse().ok()?;
        (v.fract() == 0.0 && v.abs() < 9.0e15).then_some(v as i64)
    })
}

/// Comma-separated text, label (if any) in the last column.
///
/// Floats use the shortest representation that parses back to the same bits.
pub fn format_dataset(ds: &Dataset) -> String {
    let mut out = String::new();
    for i in 0..ds.n() {
        for (j, v) in ds.point(i).iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v:?}").unwrap();
        }
        if let Some(labels) = ds.labels() {
            write!(out, ",{}", labels[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_dataset(ds: &Dataset, path: &Path) -> Result<()> {
    std::fs::write(path, format_dataset(ds))?;
    Ok(())
}

/// Keeps the points whose label is in `classes`, in their original order.
pub fn subset_by_class(ds: &Dataset, classes: &BTreeSet<i64>) -> Result<Dataset> {
    let labels = ds
        .labels()
        .ok_or_else(|| Error::InvalidData("dataset has no labels".into()))?;
    let keep: Vec<usize> = (0..ds.n()).filter(|&i| classes.contains(&labels[i])).collect();
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    let points = keep.iter().map(|&i| ds.point(i).to_vec()).collect();
    let kept_labels = keep.iter().map(|&i| labels[i]).collect();
    Dataset::new(points, Some(kept_labels))
}

/// Maps every attribute column onto `[0, 1]` by `(x - min) / (max - min)`.
///
/// Constant columns become all zeros.
pub fn normalize_min_max(ds: &Dataset) -> Dataset {
    let p = ds.p();
    let mut lo = vec![f64::INFINITY; p];
    let mut hi = vec![f64::NEG_INFINITY; p];
    for x in ds.points() {
        for j in 0..p {
            lo[j] = lo[j].min(x[j]);
            hi[j] = hi[j].max(x[j]);
        }
    }
    let points = ds
        .points()
        .iter()
        .map(|x| {
            (0..p)
                .map(|j| {
                    let range = hi[j] - lo[j];
                    if range > 0.0 {
                        (x[j] - lo[j]) / range
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    Dataset::new(points, ds.labels().map(<[i64]>::to_vec))
        .expect("normalized values are finite")
}
