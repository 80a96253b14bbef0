use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::Classifier;
use crate::error::{Error, Result};

/// Precomputed predictions, a CSV with header `path,label`.
///
/// Relative paths are resolved against the corpus root, so the manifest's
/// `output_path` column can be used directly.
#[derive(Debug, Clone, Default)]
pub struct PredictionsFile {
    labels: HashMap<PathBuf, String>,
}

#[derive(Deserialize)]
struct Row {
    path: String,
    label: String,
}

impl PredictionsFile {
    pub fn load(path: &Path, corpus_root: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, corpus_root)
    }

    pub fn parse(text: &str, corpus_root: &Path) -> Result<Self> {
        let root = std::path::absolute(corpus_root).map_err(|e| Error::io(corpus_root, e))?;
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut labels = HashMap::new();
        for (i, row) in reader.deserialize::<Row>().enumerate() {
            let row = row.map_err(|e| Error::parse(i + 2, format!("predictions: {e}")))?;
            let key = root.join(&row.path);
            if labels.insert(key, row.label).is_some() {
                return Err(Error::parse(i + 2, format!("duplicate prediction for {}", row.path)));
            }
        }
        Ok(Self { labels })
    }
}

impl Classifier for PredictionsFile {
    fn predict(&mut self, path: &Path) -> Result<String> {
        self.labels.get(path).cloned().ok_or_else(|| Error::Adapter {
            path: path.to_path_buf(),
            message: "no prediction listed for this file".into(),
        })
    }
}
