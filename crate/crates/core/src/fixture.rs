//! Published score rows shipped with the crate.
//!
//! `data/table_iii.csv` holds 75 rows of `row_id,condition_label,classifier,
//! cv,mean,asi` for AlexNet, VGG19 and ResNet50 variants trained with 5%,
//! 10% and 15% two-factor noise. Only CV, mean and ASI are published; the
//! per-condition accuracies are not.

use serde::Deserialize;

use crate::error::{Error, Result};

const TABLE_III: &str = include_str!("../data/table_iii.csv");

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct FixtureRow {
    pub row_id: u32,
    pub condition_label: String,
    pub classifier: String,
    pub cv: f64,
    pub mean: f64,
    pub asi: f64,
}

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    reader
        .deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::parse(i + 2, e.to_string())))
        .collect()
}

/// The 75 published rows.
pub fn table_iii() -> Vec<FixtureRow> {
    parse_fixture(TABLE_III).expect("shipped fixture parses")
}

pub fn table_iii_csv() -> &'static str {
    TABLE_III
}

/// Looks a row up by its `R<n>` shorthand.
pub fn row(rows: &[FixtureRow], name: &str) -> Option<FixtureRow> {
    let n: u32 = name.strip_prefix('R')?.parse().ok()?;
    rows.iter().find(|r| r.row_id == n).cloned()
}
