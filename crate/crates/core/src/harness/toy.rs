use std::collections::BTreeMap;
use std::path::Path;

use super::Classifier;
use crate::error::{Error, Result};
use crate::image::Image;
use crate::pnm;
use crate::registry::Corpus;

/// Nearest-centroid classifier over per-image (mean, variance).
///
/// Ties go to the lexicographically smallest label.
#[derive(Debug, Clone, PartialEq)]
pub struct NearestCentroid {
    centroids: Vec<(String, [f64; 2])>,
}

pub fn features(img: &Image) -> [f64; 2] {
    let (mean, var) = img.mean_and_variance();
    [mean, var]
}

impl NearestCentroid {
    pub fn fit<'a>(samples: impl IntoIterator<Item = (&'a str, [f64; 2])>) -> Result<Self> {
        let mut sums: BTreeMap<&str, ([f64; 2], usize)> = BTreeMap::new();
        for (label, f) in samples {
            let slot = sums.entry(label).or_insert(([0.0; 2], 0));
            slot.0[0] += f[0];
            slot.0[1] += f[1];
            slot.1 += 1;
        }
        if sums.is_empty() {
            return Err(Error::EmptyInput("training samples"));
        }
        let centroids = sums
            .into_iter()
            .map(|(label, (s, n))| (label.to_string(), [s[0] / n as f64, s[1] / n as f64]))
            .collect();
        Ok(Self { centroids })
    }

    /// Fits on condition 0 (the clean group) of a corpus.
    pub fn fit_clean_group(corpus: &Corpus) -> Result<Self> {
        let mut samples = Vec::new();
        for entry in corpus.manifest.entries.iter().filter(|e| e.condition_id == 0) {
            let img = pnm::read(&corpus.path_of(entry))?;
            samples.push((entry.true_label.as_str(), features(&img)));
        }
        Self::fit(samples)
    }

    pub fn centroids(&self) -> &[(String, [f64; 2])] {
        &self.centroids
    }

    pub fn classify(&self, img: &Image) -> &str {
        let f = features(img);
        let mut best = (f64::INFINITY, "");
        for (label, c) in &self.centroids {
            let d = (f[0] - c[0]).powi(2) + (f[1] - c[1]).powi(2);
            if d < best.0 {
                best = (d, label);
            }
        }
        best.1
    }
}

impl Classifier for NearestCentroid {
    fn predict(&mut self, path: &Path) -> Result<String> {
        Ok(self.classify(&pnm::read(path)?).to_string())
    }
}
