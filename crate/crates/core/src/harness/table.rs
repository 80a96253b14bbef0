//! Accuracy tables: `classifier,condition,accuracy`, one row per pair.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AccuracySeries;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Row {
    classifier: String,
    condition: u32,
    accuracy: f64,
}

/// Parses an accuracy table into one series per classifier, ordered by
/// classifier id. An empty document yields an empty list.
pub fn load_accuracy_table(source: &str) -> Result<Vec<AccuracySeries>> {
    if source.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::parse(1, e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["classifier", "condition", "accuracy"] {
        return Err(Error::parse(
            1,
            format!("expected header `classifier,condition,accuracy`, got {:?}", headers.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut grouped: BTreeMap<String, BTreeMap<u32, f64>> = BTreeMap::new();
    for result in reader.records() {
        let record = result.map_err(|e| {
            Error::parse(e.position().map_or(0, |p| p.line() as usize), e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let row: Row = record
            .deserialize(Some(&headers))
            .map_err(|e| Error::parse(line, e.to_string()))?;
        if !(0.0..=100.0).contains(&row.accuracy) {
            return Err(Error::parse(
                line,
                format!("accuracy {} outside [0, 100]", row.accuracy),
            ));
        }
        let series = grouped.entry(row.classifier.clone()).or_default();
        if series.insert(row.condition, row.accuracy).is_some() {
            return Err(Error::parse(
                line,
                format!(
                    "duplicate row for classifier {:?}, condition {}",
                    row.classifier, row.condition
                ),
            ));
        }
    }
    grouped
        .into_iter()
        .map(|(id, entries)| AccuracySeries::new(id, entries.into_iter().collect()))
        .collect()
}

/// Renders series as an accuracy table. Accuracies use the shortest decimal
/// that parses back to the same `f64`.
pub fn write_accuracy_table(series: &[AccuracySeries]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["classifier", "condition", "accuracy"])
        .expect("in-memory csv write");
    for s in series {
        for &(condition, accuracy) in s.entries() {
            writer
                .write_record([
                    s.classifier_id().to_string(),
                    condition.to_string(),
                    accuracy.to_string(),
                ])
                .expect("in-memory csv write");
        }
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv flush")).expect("utf-8")
}
