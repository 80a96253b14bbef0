//! Per-condition accuracies for a classifier, either measured over a
//! materialized corpus or ingested from an accuracy table.

mod predictions;
mod subprocess;
mod table;
mod toy;

pub use predictions::PredictionsFile;
pub use subprocess::SubprocessClassifier;
pub use table::{load_accuracy_table, write_accuracy_table};
pub use toy::NearestCentroid;

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::registry::Corpus;

/// Accuracies in percent, one per condition, ids strictly ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracySeries {
    classifier_id: String,
    entries: Vec<(u32, f64)>,
}

impl AccuracySeries {
    /// Sorts entries by condition id and validates them.
    pub fn new(classifier_id: impl Into<String>, mut entries: Vec<(u32, f64)>) -> Result<Self> {
        let classifier_id = classifier_id.into();
        entries.sort_by_key(|&(id, _)| id);
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::validation(
                    format!("classifier {classifier_id}"),
                    format!("duplicate condition {}", pair[0].0),
                ));
            }
        }
        if let Some(&(id, acc)) = entries.iter().find(|(_, a)| !(0.0..=100.0).contains(a)) {
            return Err(Error::validation(
                format!("classifier {classifier_id}"),
                format!("accuracy {acc} for condition {id} outside [0, 100]"),
            ));
        }
        Ok(Self {
            classifier_id,
            entries,
        })
    }

    pub fn classifier_id(&self) -> &str {
        &self.classifier_id
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn accuracies(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|&(_, a)| a)
    }

    pub fn accuracy(&self, condition: u32) -> Option<f64> {
        self.entries
            .binary_search_by_key(&condition, |&(id, _)| id)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Something that assigns one label to one image file.
pub trait Classifier {
    /// `path` is absolute. Any returned label that differs from the ground
    /// truth, including an empty one, counts as incorrect.
    fn predict(&mut self, path: &Path) -> Result<String>;
}

impl<F> Classifier for F
where
    F: FnMut(&Path) -> Result<String>,
{
    fn predict(&mut self, path: &Path) -> Result<String> {
        self(path)
    }
}

/// How to obtain a classifier for [`evaluate`].
///
/// Parses from `toy`, `subprocess:CMD ARGS...` or `file:PATH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifierAdapter {
    /// Nearest-centroid over (mean, variance), fit on the corpus' clean group.
    Toy,
    /// External process speaking the line protocol, see [`SubprocessClassifier`].
    Subprocess { program: String, args: Vec<String> },
    /// Precomputed `path,label` predictions.
    PredictionsFile(PathBuf),
}

impl FromStr for ClassifierAdapter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "toy" {
            return Ok(ClassifierAdapter::Toy);
        }
        if let Some(cmd) = s.strip_prefix("subprocess:") {
            let mut words = cmd.split_whitespace().map(str::to_string);
            let program = words
                .next()
                .ok_or_else(|| Error::InvalidParameter("subprocess adapter needs a command".into()))?;
            return Ok(ClassifierAdapter::Subprocess {
                program,
                args: words.collect(),
            });
        }
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(Error::InvalidParameter("file adapter needs a path".into()));
            }
            return Ok(ClassifierAdapter::PredictionsFile(PathBuf::from(path)));
        }
        Err(Error::InvalidParameter(format!(
            "unknown adapter {s:?}; expected toy, subprocess:CMD or file:PATH"
        )))
    }
}

/// Verifies the corpus checksums, builds the adapter's classifier and
/// measures accuracy per condition.
pub fn evaluate(
    adapter: &ClassifierAdapter,
    corpus: &Corpus,
    classifier_id: &str,
) -> Result<AccuracySeries> {
    corpus.verify()?;
    match adapter {
        ClassifierAdapter::Toy => {
            let mut model = NearestCentroid::fit_clean_group(corpus)?;
            evaluate_verified(&mut model, corpus, classifier_id)
        }
        ClassifierAdapter::Subprocess { program, args } => {
            let mut child = SubprocessClassifier::spawn(program, args)?;
            let series = evaluate_verified(&mut child, corpus, classifier_id);
            child.finish()?;
            series
        }
        ClassifierAdapter::PredictionsFile(path) => {
            let mut preds = PredictionsFile::load(path, &corpus.root)?;
            evaluate_verified(&mut preds, corpus, classifier_id)
        }
    }
}

/// Like [`evaluate`] but with a caller-supplied classifier.
pub fn evaluate_with(
    classifier: &mut dyn Classifier,
    corpus: &Corpus,
    classifier_id: &str,
) -> Result<AccuracySeries> {
    corpus.verify()?;
    evaluate_verified(classifier, corpus, classifier_id)
}

fn evaluate_verified(
    classifier: &mut dyn Classifier,
    corpus: &Corpus,
    classifier_id: &str,
) -> Result<AccuracySeries> {
    if corpus.manifest.entries.is_empty() {
        return Err(Error::EmptyInput("corpus manifest"));
    }
    let root = std::path::absolute(&corpus.root).map_err(|e| Error::io(&corpus.root, e))?;
    // (correct, total) per condition
    let mut tally: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    let mut seen = HashSet::new();
    for entry in &corpus.manifest.entries {
        if !seen.insert(&entry.output_path) {
            return Err(Error::validation(
                &entry.output_path,
                "listed twice in the manifest",
            ));
        }
        let path = root.join(&entry.output_path);
        let predicted = classifier.predict(&path).map_err(|e| match e {
            e @ Error::Adapter { .. } => e,
            other => Error::Adapter {
                path: path.clone(),
                message: other.to_string(),
            },
        })?;
        let slot = tally.entry(entry.condition_id).or_default();
        slot.1 += 1;
        if predicted == entry.true_label {
            slot.0 += 1;
        } else {
            log::debug!(
                "{}: predicted {predicted:?}, expected {:?}",
                entry.output_path,
                entry.true_label
            );
        }
    }
    let entries = tally
        .into_iter()
        .map(|(id, (correct, total))| (id, 100.0 * correct as f64 / total as f64))
        .collect();
    AccuracySeries::new(classifier_id, entries)
}
