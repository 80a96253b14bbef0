//! Writing corrupted image groups and the corpus manifest.
//!
//! Layout of a materialized corpus:
//!
//! ```text
//! <root>/manifest.csv     one row per output file, seed in a `#` header
//! <root>/registry.txt     the registry document used
//! <root>/c000/<name>      clean group, byte-identical to the inputs
//! <root>/c001/<name>      ...
//! ```

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ConditionRegistry;
use crate::error::{Error, Result};
use crate::image::Image;
use crate::perturb::apply_sequence;
use crate::pnm;
use crate::seed::Seed;

pub const MANIFEST_FILE: &str = "manifest.csv";
pub const REGISTRY_FILE: &str = "registry.txt";
/// Clean-corpus label file: `filename,label`.
pub const LABELS_FILE: &str = "labels.csv";

/// A clean input image with its ground-truth label and original file bytes.
#[derive(Debug, Clone)]
pub struct LabeledImage {
    pub name: String,
    pub label: String,
    pub image: Image,
    pub encoded: Vec<u8>,
}

impl LabeledImage {
    /// Wraps an in-memory image. The image is quantized to 8 bits so the
    /// corpus produced from memory matches the one produced from disk.
    pub fn from_image(name: impl Into<String>, label: impl Into<String>, image: &Image) -> Self {
        let name = name.into();
        let encoded = pnm::encode(image);
        let image = pnm::decode(&encoded, Path::new(&name)).expect("freshly encoded image decodes");
        Self {
            name,
            label: label.into(),
            image,
            encoded,
        }
    }

    pub fn from_file(path: &Path, label: impl Into<String>) -> Result<Self> {
        let encoded = fs::read(path).map_err(|e| Error::io(path, e))?;
        let image = pnm::decode(&encoded, path)?;
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .ok_or_else(|| Error::validation(path.display().to_string(), "unusable file name"))?
            .to_string();
        Ok(Self {
            name,
            label: label.into(),
            image,
            encoded,
        })
    }

    /// Loads a clean corpus directory described by its `labels.csv`
    /// (`filename,label`). Every listed image is decoded before returning.
    pub fn load_dir(dir: &Path) -> Result<Vec<Self>> {
        let labels_path = dir.join(LABELS_FILE);
        let text = fs::read_to_string(&labels_path).map_err(|e| Error::io(&labels_path, e))?;
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut out = Vec::new();
        for (i, row) in reader.deserialize::<LabelRow>().enumerate() {
            let row = row.map_err(|e| Error::parse(i + 2, e.to_string()))?;
            out.push(Self::from_file(&dir.join(&row.filename), row.label)?);
        }
        Ok(out)
    }
}

#[derive(Deserialize, Serialize)]
struct LabelRow {
    filename: String,
    label: String,
}

/// Writes `labels.csv` and the images of an in-memory clean corpus.
pub fn write_clean_dir(dir: &Path, images: &[LabeledImage]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    for img in images {
        let path = dir.join(&img.name);
        fs::write(&path, &img.encoded).map_err(|e| Error::io(&path, e))?;
        writer
            .serialize(LabelRow {
                filename: img.name.clone(),
                label: img.label.clone(),
            })
            .expect("in-memory csv write");
    }
    let bytes = writer.into_inner().expect("in-memory csv flush");
    let path = dir.join(LABELS_FILE);
    fs::write(&path, bytes).map_err(|e| Error::io(&path, e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub condition_id: u32,
    pub condition_label: String,
    pub source_filename: String,
    /// Relative to the corpus root, `/`-separated.
    pub output_path: String,
    pub true_label: String,
    /// Lowercase hex SHA-256 of the output file.
    pub checksum: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub seed: u64,
    pub group_size: usize,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            writer.serialize(e).expect("in-memory csv write");
        }
        let body = String::from_utf8(writer.into_inner().expect("in-memory csv flush"))
            .expect("csv output is utf-8");
        format!(
            "# seed: {}\n# group_size: {}\n{}",
            self.seed, self.group_size, body
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut seed = None;
        let mut group_size = None;
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let Some((key, value)) = line.trim_start_matches('#').split_once(':') else {
                continue;
            };
            match key.trim() {
                "seed" => seed = value.trim().parse().ok(),
                "group_size" => group_size = value.trim().parse().ok(),
                _ => {}
            }
        }
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for (i, row) in reader.deserialize::<ManifestEntry>().enumerate() {
            entries.push(row.map_err(|e| Error::parse(i + 1, format!("manifest: {e}")))?);
        }
        Ok(Self {
            seed: seed.ok_or_else(|| Error::validation("manifest", "missing `# seed:` header"))?,
            group_size: group_size
                .ok_or_else(|| Error::validation("manifest", "missing `# group_size:` header"))?,
            entries,
        })
    }

    /// Distinct condition ids in first-seen order.
    pub fn condition_ids(&self) -> Vec<u32> {
        let mut seen = HashSet::new();
        self.entries
            .iter()
            .map(|e| e.condition_id)
            .filter(|id| seen.insert(*id))
            .collect()
    }
}

/// A materialized corpus on disk.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub root: PathBuf,
    pub manifest: Manifest,
}

impl Corpus {
    pub fn open(root: &Path) -> Result<Self> {
        let path = root.join(MANIFEST_FILE);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok(Self {
            root: root.to_path_buf(),
            manifest: Manifest::parse(&text)?,
        })
    }

    pub fn path_of(&self, entry: &ManifestEntry) -> PathBuf {
        self.root.join(&entry.output_path)
    }

    /// Recomputes every checksum; the first mismatch or unreadable file is
    /// returned as an error.
    pub fn verify(&self) -> Result<()> {
        self.manifest.entries.par_iter().try_for_each(|entry| {
            let path = self.path_of(entry);
            let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
            if sha256_hex(&bytes) != entry.checksum {
                return Err(Error::ChecksumMismatch(path));
            }
            Ok(())
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn group_dir(id: u32) -> String {
    format!("c{id:03}")
}

/// Materializes one image group per registry condition under `out_dir`.
///
/// Images are sorted by name and capped at the registry's group size.
/// Image `i` of condition `c` is corrupted with `seed.derive(c).derive(i)`;
/// the clean group copies the original bytes. Work fans out over the
/// current rayon pool, and the result does not depend on scheduling.
pub fn materialize(
    clean: &[LabeledImage],
    registry: &ConditionRegistry,
    seed: Seed,
    out_dir: &Path,
) -> Result<Manifest> {
    if clean.is_empty() {
        return Err(Error::EmptyInput("clean corpus"));
    }
    let mut names = HashSet::new();
    for img in clean {
        if img.name.is_empty() || img.name.contains(['/', '\\']) || img.name.starts_with('.') {
            return Err(Error::validation(&img.name, "image name must be a plain file name"));
        }
        if img.label.trim().is_empty() {
            return Err(Error::validation(&img.name, "missing label"));
        }
        if !names.insert(img.name.as_str()) {
            return Err(Error::validation(&img.name, "duplicate image name"));
        }
    }
    let mut images: Vec<&LabeledImage> = clean.iter().collect();
    images.sort_by(|a, b| a.name.cmp(&b.name));
    images.truncate(registry.group_size());

    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    for c in registry.conditions() {
        let dir = out_dir.join(group_dir(c.id));
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    }

    let jobs: Vec<(usize, usize)> = (0..registry.len())
        .flat_map(|c| (0..images.len()).map(move |i| (c, i)))
        .collect();
    let entries = jobs
        .par_iter()
        .map(|&(c, i)| {
            let condition = &registry.conditions()[c];
            let src = images[i];
            let bytes = if condition.is_clean() {
                src.encoded.clone()
            } else {
                let sub = seed.derive(condition.id as u64).derive(i as u64);
                pnm::encode(&apply_sequence(&src.image, &condition.steps, sub)?)
            };
            let output_path = format!("{}/{}", group_dir(condition.id), src.name);
            let path = out_dir.join(&output_path);
            fs::write(&path, &bytes).map_err(|e| Error::io(&path, e))?;
            Ok(ManifestEntry {
                condition_id: condition.id,
                condition_label: condition.label.clone(),
                source_filename: src.name.clone(),
                output_path,
                true_label: src.label.clone(),
                checksum: sha256_hex(&bytes),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let manifest = Manifest {
        seed: seed.0,
        group_size: images.len(),
        entries,
    };
    let path = out_dir.join(MANIFEST_FILE);
    fs::write(&path, manifest.to_csv()).map_err(|e| Error::io(&path, e))?;
    let path = out_dir.join(REGISTRY_FILE);
    fs::write(&path, registry.to_document()).map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::Channels;
    use crate::registry::load_registry;

    fn tiny_corpus() -> Vec<LabeledImage> {
        (0..3)
            .map(|i| {
                let img = Image::filled(8, 8, Channels::Gray, 0.2 + 0.3 * i as f32).unwrap();
                LabeledImage::from_image(format!("img{i}.pgm"), format!("class{i}"), &img)
            })
            .collect()
    }

    #[test]
    fn manifest_csv_round_trip() {
        let m = Manifest {
            seed: 42,
            group_size: 1,
            entries: vec![ManifestEntry {
                condition_id: 3,
                condition_label: "SP0.2".into(),
                source_filename: "a,b.pgm".into(),
                output_path: "c003/a,b.pgm".into(),
                true_label: "cat".into(),
                checksum: "00ff".into(),
            }],
        };
        let text = m.to_csv();
        assert!(text.starts_with("# seed: 42\n# group_size: 1\ncondition_id,condition_label,"));
        assert_eq!(Manifest::parse(&text).unwrap(), m);
    }

    #[test]
    fn rejects_bad_corpora_before_writing() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out");
        let reg = load_registry("0 | clean | - | -\n1 | SP | SP 0.5 | -\n").unwrap();
        assert!(materialize(&[], &reg, Seed(1), &out).is_err());
        let mut dup = tiny_corpus();
        dup[1].name = dup[0].name.clone();
        assert!(materialize(&dup, &reg, Seed(1), &out).is_err());
        let mut unlabeled = tiny_corpus();
        unlabeled[2].label = " ".into();
        assert!(materialize(&unlabeled, &reg, Seed(1), &out).is_err());
        assert!(!out.exists());
    }

    #[test]
    fn group_size_caps_images_per_group() {
        let dir = tempfile::tempdir().unwrap();
        let reg = load_registry("0 | clean | - | -\n1 | SP | SP 0.5 | -\n")
            .unwrap()
            .with_group_size(2)
            .unwrap();
        let m = materialize(&tiny_corpus(), &reg, Seed(1), dir.path()).unwrap();
        assert_eq!(m.entries.len(), 4);
        assert_eq!(m.group_size, 2);
        assert_eq!(m.condition_ids(), vec![0, 1]);
        let corpus = Corpus::open(dir.path()).unwrap();
        assert_eq!(corpus.manifest, m);
        corpus.verify().unwrap();
    }

    #[test]
    fn verify_detects_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let reg = load_registry("0 | clean | - | -\n1 | GA | GA 0.1 | -\n").unwrap();
        materialize(&tiny_corpus(), &reg, Seed(5), dir.path()).unwrap();
        let victim = dir.path().join("c001/img1.pgm");
        let mut bytes = fs::read(&victim).unwrap();
        *bytes.last_mut().unwrap() ^= 1;
        fs::write(&victim, bytes).unwrap();
        let err = Corpus::open(dir.path()).unwrap().verify().unwrap_err();
        assert!(matches!(err, Error::ChecksumMismatch(p) if p == victim));
    }
}
