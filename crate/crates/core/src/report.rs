//! Score tables and Table III-shaped reports.
//!
//! A score table has the header `classifier,cv,mean,asi`; every value is
//! rendered with three decimals. Readers also accept the published fixture
//! layout (`row_id,condition_label,classifier,cv,mean,asi`), in which case
//! rows can be addressed as `R<row_id>` as well as by classifier id.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fixture::{self, FixtureRow};
use crate::metrics::BenchmarkScore;

pub const SCORE_HEADER: &str = "classifier,cv,mean,asi";

/// Renders scores sorted by classifier id.
pub fn write_score_table(scores: &[BenchmarkScore]) -> String {
    let mut sorted: Vec<&BenchmarkScore> = scores.iter().collect();
    sorted.sort_by(|a, b| a.classifier_id.cmp(&b.classifier_id));
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(SCORE_HEADER.split(','))
        .expect("in-memory csv write");
    for s in sorted {
        writer
            .write_record([
                s.classifier_id.clone(),
                format!("{:.3}", s.cv_percent),
                format!("{:.3}", s.mean_accuracy_percent),
                format!("{:.3}", s.asi),
            ])
            .expect("in-memory csv write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv flush")).expect("utf-8")
}

/// A scored row, with its published row id and condition when read from
/// the fixture layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRecord {
    pub row_id: Option<u32>,
    pub condition_label: Option<String>,
    pub score: BenchmarkScore,
}

impl ScoreRecord {
    pub fn matches(&self, name: &str) -> bool {
        self.score.classifier_id == name
            || self.row_id.is_some_and(|id| name.strip_prefix('R') == Some(&id.to_string()))
    }
}

impl From<FixtureRow> for ScoreRecord {
    fn from(row: FixtureRow) -> Self {
        let score = BenchmarkScore::from_summary(&row.classifier, row.mean, row.cv)
            .expect("published rows have positive mean");
        Self {
            row_id: Some(row.row_id),
            condition_label: Some(row.condition_label),
            score,
        }
    }
}

/// Reads a score table or fixture; ASI is recomputed from `mean` and `cv`.
pub fn load_score_table(text: &str) -> Result<Vec<ScoreRecord>> {
    let header = text
        .lines()
        .find(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.replace(' ', ""));
    match header.as_deref() {
        None => Ok(Vec::new()),
        Some(SCORE_HEADER) => {
            let mut reader = csv::ReaderBuilder::new()
                .comment(Some(b'#'))
                .trim(csv::Trim::All)
                .from_reader(text.as_bytes());
            let mut out = Vec::new();
            for (i, rec) in reader.records().enumerate() {
                let line = i + 2;
                let rec = rec.map_err(|e| Error::parse(line, e.to_string()))?;
                let num = |k: usize| -> Result<f64> {
                    rec.get(k)
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| Error::parse(line, format!("bad number in column {}", k + 1)))
                };
                let score = BenchmarkScore::from_summary(&rec[0], num(2)?, num(1)?)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                out.push(ScoreRecord {
                    row_id: None,
                    condition_label: None,
                    score,
                });
            }
            Ok(out)
        }
        Some("row_id,condition_label,classifier,cv,mean,asi") => {
            let rows = fixture::parse_fixture(text)?;
            for r in &rows {
                if r.mean < 0.0 || r.cv < 0.0 || r.mean + r.cv == 0.0 {
                    return Err(Error::validation(format!("row {}", r.row_id), "unscorable mean/cv"));
                }
            }
            Ok(rows.into_iter().map(ScoreRecord::from).collect())
        }
        Some(other) => Err(Error::parse(1, format!("unrecognized score table header {other:?}"))),
    }
}

/// Renders a Markdown table in the published column layout with ASI
/// recomputed from each row's mean and CV.
pub fn render_report(records: &[ScoreRecord]) -> String {
    let mut out = String::from(
        "| Row ID | Condition | DL classifier | CV (%) | Mean of accuracies (%) | ASI |\n\
         |---:|---|---|---:|---:|---:|\n",
    );
    for (i, r) in records.iter().enumerate() {
        let row_id = r.row_id.map_or(i as u32 + 1, |id| id);
        let _ = writeln!(
            out,
            "| {} | {} | {} | {:.3} | {:.3} | {:.3} |",
            row_id,
            r.condition_label.as_deref().unwrap_or("-"),
            r.score.classifier_id,
            r.score.cv_percent,
            r.score.mean_accuracy_percent,
            r.score.asi
        );
    }
    out
}
