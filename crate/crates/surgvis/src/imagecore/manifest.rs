//! Dataset manifests: the JSON index tying image files to ground-truth labels
//! and train/test splits.

use super::label::DistortionLabel;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("io failure: {0}")]
    Io(String),
    #[error("malformed manifest {path}: {reason}")]
    Malformed { path: PathBuf, reason: String },
    #[error("duplicate entry id `{0}`")]
    DuplicateId(String),
    #[error("unknown entry id `{0}`")]
    UnknownId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// One benchmark image. `clean_path` is present for paired entries (enabling
/// full-reference metrics) and absent for unpaired ones. Paths are stored
/// relative to the manifest file; use the accessors on [`DatasetManifest`]
/// to resolve them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub clean_path: Option<PathBuf>,
    pub distorted_path: PathBuf,
    pub label: DistortionLabel,
    pub split: Split,
}

/// An ordered list of entries plus the directory its relative paths resolve
/// against. Serialized as a top-level JSON array.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetManifest {
    root: PathBuf,
    entries: Vec<ManifestEntry>,
}

impl DatasetManifest {
    pub fn new(root: impl Into<PathBuf>, entries: Vec<ManifestEntry>) -> Result<Self, ManifestError> {
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(e.id.clone()) {
                return Err(ManifestError::DuplicateId(e.id.clone()));
            }
        }
        Ok(Self { root: root.into(), entries })
    }

    pub fn load(path: &Path) -> Result<Self, ManifestError> {
        let text = std::fs::read_to_string(path).map_err(|e| ManifestError::Io(e.to_string()))?;
        let entries: Vec<ManifestEntry> = serde_json::from_str(&text).map_err(|e| {
            ManifestError::Malformed { path: path.to_path_buf(), reason: e.to_string() }
        })?;
        let root = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        Self::new(root, entries)
    }

    pub fn save(&self, path: &Path) -> Result<(), ManifestError> {
        let mut json = serde_json::to_string_pretty(&self.entries)
            .map_err(|e| ManifestError::Io(e.to_string()))?;
        json.push('\n');
        std::fs::write(path, json).map_err(|e| ManifestError::Io(e.to_string()))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn entries(&self) -> &[ManifestEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn split_entries(&self, split: Split) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.iter().filter(move |e| e.split == split)
    }

    pub fn by_id(&self, id: &str) -> Result<&ManifestEntry, ManifestError> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| ManifestError::UnknownId(id.to_string()))
    }

    fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() { p.to_path_buf() } else { self.root.join(p) }
    }

    pub fn distorted_path(&self, entry: &ManifestEntry) -> PathBuf {
        self.resolve(&entry.distorted_path)
    }

    pub fn clean_path(&self, entry: &ManifestEntry) -> Option<PathBuf> {
        entry.clean_path.as_ref().map(|p| self.resolve(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imagecore::{DistortionCategory, Severity};

    fn entry(id: &str, split: Split) -> ManifestEntry {
        ManifestEntry {
            id: id.to_string(),
            clean_path: Some(PathBuf::from(format!("clean/{id}.png"))),
            distorted_path: PathBuf::from(format!("images/{id}.png")),
            label: DistortionLabel::single(DistortionCategory::Smoke, Severity::Severe).unwrap(),
            split,
        }
    }

    #[test]
    fn round_trips_through_json_array() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        let manifest = DatasetManifest::new(
            dir.path(),
            vec![entry("a", Split::Train), entry("b", Split::Test)],
        )
        .unwrap();
        manifest.save(&path).unwrap();

        let text = std::fs::read_to_string(&path).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(value.is_array());
        assert_eq!(value[0]["label"], "smoke:severe");
        assert_eq!(value[0]["split"], "train");

        let back = DatasetManifest::load(&path).unwrap();
        assert_eq!(back.entries(), manifest.entries());
        assert_eq!(back.distorted_path(&back.entries()[0]), dir.path().join("images/a.png"));
    }

    #[test]
    fn unpaired_entries_permitted_duplicates_rejected() {
        let mut unpaired = entry("u", Split::Test);
        unpaired.clean_path = None;
        assert!(DatasetManifest::new(".", vec![unpaired]).is_ok());
        assert!(matches!(
            DatasetManifest::new(".", vec![entry("a", Split::Train), entry("a", Split::Test)]),
            Err(ManifestError::DuplicateId(_))
        ));
    }

    #[test]
    fn invalid_label_in_file_is_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        std::fs::write(
            &path,
            r#"[{"id":"x","clean_path":null,"distorted_path":"x.png","label":"smoke:mild","split":"test"}]"#,
        )
        .unwrap();
        assert!(matches!(
            DatasetManifest::load(&path),
            Err(ManifestError::Malformed { .. })
        ));
    }
}
