//! Registry of local dataset files with their expected shape.
//!
//! One record per line: `id path n p classes`. Relative paths resolve
//! against the manifest's directory. Files listed here carry the class label
//! in their last column.

use std::path::{Path, PathBuf};

use super::{load, LabelColumn, RawDatasetFile};
use crate::{Dataset, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    pub path: PathBuf,
    pub n: usize,
    pub p: usize,
    pub classes: usize,
}

pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [id, path, n, p, classes] = fields[..] else {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected `id path n p classes`, got {} fields", fields.len()),
            });
        };
        let num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("`{s}` is not a count"),
            })
        };
        let path = Path::new(path);
        entries.push(ManifestEntry {
            id: id.to_string(),
            path: if path.is_absolute() {
                path.to_path_buf()
            } else {
                base.join(path)
            },
            n: num(n)?,
            p: num(p)?,
            classes: num(classes)?,
        });
    }
    Ok(entries)
}

/// Loads dataset `id` listed in the manifest at `manifest` and checks its
/// `(n, p, classes)` triple.
pub fn load_manifest_entry(manifest: &Path, id: &str) -> Result<Dataset> {
    let text = std::fs::read_to_string(manifest)?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let entries = parse_manifest(&text, base)?;
    let entry = entries
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::Config(format!("dataset `{id}` is not in the manifest")))?;
    let ds = load(&RawDatasetFile::new(&entry.path).labels(LabelColumn::Last))?;
    let found = (ds.n(), ds.p(), ds.class_count());
    let expected = (entry.n, entry.p, entry.classes);
    if found != expected {
        let fmt = |(n, p, c): (usize, usize, usize)| format!("n={n} p={p} classes={c}");
        return Err(Error::ManifestMismatch {
            id: id.to_string(),
            expected: fmt(expected),
            found: fmt(found),
        });
    }
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_records_and_resolves_paths() {
        let text = "# id path n p classes\nimbalance2 data/imb2.txt 2100 2 2\nabs /x/y.csv 5 3 1\n";
        let e = parse_manifest(text, Path::new("/m")).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].path, PathBuf::from("/m/data/imb2.txt"));
        assert_eq!((e[0].n, e[0].p, e[0].classes), (2100, 2, 2));
        assert_eq!(e[1].path, PathBuf::from("/x/y.csv"));
        assert!(parse_manifest("a b 1 2\n", Path::new(".")).is_err());
        assert!(parse_manifest("a b x 2 1\n", Path::new(".")).is_err());
    }

    #[test]
    fn verifies_shape() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("d.txt"), "0 0 1\n1 1 1\n5 5 2\n").unwrap();
        let manifest = dir.path().join("manifest.txt");
        std::fs::write(&manifest, "good d.txt 3 2 2\nbad d.txt 4 2 2\n").unwrap();
        assert_eq!(load_manifest_entry(&manifest, "good").unwrap().n(), 3);
        assert!(matches!(
            load_manifest_entry(&manifest, "bad"),
            Err(Error::ManifestMismatch { .. })
        ));
        assert!(matches!(
            load_manifest_entry(&manifest, "missing"),
            Err(Error::Config(_))
        ));
    }
}
