//! Scores an accuracy table (`classifier,condition,accuracy`) and prints
//! the score table.
//!
//! cargo run --example score_accuracy_table -- [TABLE.csv]

use asi_bench::harness::{load_accuracy_table, AccuracySeries};
use asi_bench::metrics::score;
use asi_bench::report::write_score_table;

fn main() -> asi_bench::Result<()> {
    let series = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| asi_bench::Error::io(&path, e))?;
            load_accuracy_table(&text)?
        }
        None => vec![
            AccuracySeries::new("steady", (0..69).map(|c| (c, 90.0 - (c % 3) as f64)).collect())?,
            AccuracySeries::new("brittle", (0..69).map(|c| (c, if c < 20 { 98.0 } else { 70.0 })).collect())?,
        ],
    };
    let scores = series.iter().map(score).collect::<asi_bench::Result<Vec<_>>>()?;
    print!("{}", write_score_table(&scores));
    Ok(())
}
