//! Benchmark conditions and the registry document format.
//!
//! A registry document is line oriented, one condition per record:
//!
//! ```text
//! # comment
//! 0 | clean | - | -
//! 1 | SP0.1 | SP 0.1 | -
//! 12 | SP0.1_GA0.15 | SP 0.1 | GA 0.15
//! ```
//!
//! Kinds are `SP` (density), `GA` (sigma) and `ROT` (degrees); `-` marks an
//! absent step.

mod materialize;

pub use materialize::{
    materialize, sha256_hex, write_clean_dir, Corpus, LabeledImage, Manifest, ManifestEntry,
    LABELS_FILE, MANIFEST_FILE, REGISTRY_FILE,
};

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perturb::PerturbationStep;

/// Images per group in the reference benchmark.
pub const DEFAULT_GROUP_SIZE: usize = 500;

const DEFAULT_DOCUMENT: &str = include_str!("../../data/default_registry.txt");

#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub id: u32,
    pub label: String,
    pub steps: Vec<PerturbationStep>,
}

impl Condition {
    pub fn is_clean(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionRegistry {
    conditions: Vec<Condition>,
    group_size: usize,
}

impl ConditionRegistry {
    /// Validates and wraps a condition list.
    ///
    /// The first condition must be the clean one (id 0, no steps) and it must
    /// be the only condition without steps. Ids are unique.
    pub fn new(conditions: Vec<Condition>, group_size: usize) -> Result<Self> {
        if group_size == 0 {
            return Err(Error::InvalidParameter("group size must be positive".into()));
        }
        let Some(first) = conditions.first() else {
            return Err(Error::validation("registry", "no conditions"));
        };
        if first.id != 0 || !first.is_clean() {
            return Err(Error::validation(
                format!("condition {} ({})", first.id, first.label),
                "the first condition must be the clean group with id 0",
            ));
        }
        let mut seen = HashSet::new();
        for c in &conditions {
            let subject = || format!("condition {} ({})", c.id, c.label);
            if !seen.insert(c.id) {
                return Err(Error::validation(subject(), "duplicate id"));
            }
            if c.label.trim().is_empty() || c.label.contains('|') {
                return Err(Error::validation(subject(), "label must be non-empty and contain no '|'"));
            }
            if c.id != 0 && c.is_clean() {
                return Err(Error::validation(subject(), "only condition 0 may have no steps"));
            }
            for step in &c.steps {
                if *step == PerturbationStep::Identity {
                    return Err(Error::validation(subject(), "identity steps are not allowed"));
                }
                step.validate()
                    .map_err(|e| Error::validation(subject(), e.to_string()))?;
            }
        }
        Ok(Self {
            conditions,
            group_size,
        })
    }

    pub fn conditions(&self) -> &[Condition] {
        &self.conditions
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn group_size(&self) -> usize {
        self.group_size
    }

    pub fn with_group_size(mut self, group_size: usize) -> Result<Self> {
        if group_size == 0 {
            return Err(Error::InvalidParameter("group size must be positive".into()));
        }
        self.group_size = group_size;
        Ok(self)
    }

    pub fn get(&self, id: u32) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Renders the registry back into the document format.
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        for c in &self.conditions {
            let mut cells = c.steps.iter().map(step_cell).collect::<Vec<_>>();
            while cells.len() < 2 {
                cells.push("-".to_string());
            }
            let _ = writeln!(out, "{} | {} | {}", c.id, c.label, cells.join(" | "));
        }
        out
    }
}

fn step_cell(step: &PerturbationStep) -> String {
    match step.intensity() {
        Some(v) => format!("{} {}", step.kind_tag(), v),
        None => "-".to_string(),
    }
}

/// Parses and validates a registry document.
pub fn load_registry(source: &str) -> Result<ConditionRegistry> {
    let mut conditions = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() < 3 {
            return Err(Error::parse(
                line_no,
                format!("expected `id | label | step [| step ...]`, got {line:?}"),
            ));
        }
        let id: u32 = fields[0]
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad condition id {:?}", fields[0])))?;
        let label = fields[1].to_string();
        let mut steps = Vec::new();
        for cell in &fields[2..] {
            if *cell == "-" {
                continue;
            }
            steps.push(parse_step(cell).map_err(|m| Error::parse(line_no, m))?);
        }
        conditions.push(Condition { id, label, steps });
    }
    ConditionRegistry::new(conditions, DEFAULT_GROUP_SIZE)
}

fn parse_step(cell: &str) -> std::result::Result<PerturbationStep, String> {
    let mut parts = cell.split_whitespace();
    let (Some(kind), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(format!("expected `KIND intensity`, got {cell:?}"));
    };
    let value: f64 = value
        .parse()
        .map_err(|_| format!("bad intensity {value:?} in {cell:?}"))?;
    match kind {
        "SP" => Ok(PerturbationStep::SaltPepper { density: value }),
        "GA" => Ok(PerturbationStep::GaussianNoise { sigma: value }),
        "ROT" => Ok(PerturbationStep::Rotation { degrees: value }),
        other => Err(format!("unknown perturbation kind {other:?}")),
    }
}

/// The built-in 69-condition registry (clean + 68 corrupted groups).
pub fn default_registry() -> ConditionRegistry {
    load_registry(DEFAULT_DOCUMENT).expect("shipped registry document is valid")
}

/// The shipped default registry document.
pub fn default_document() -> &'static str {
    DEFAULT_DOCUMENT
}
