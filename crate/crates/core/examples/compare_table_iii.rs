//! Compares two rows of the bundled published score table and ranks all
//! rows by ASI.
//!
//! cargo run --example compare_table_iii -- [A] [B]

use asi_bench::fixture::{row, table_iii};
use asi_bench::metrics::{compare, BenchmarkScore};

fn main() -> asi_bench::Result<()> {
    let mut args = std::env::args().skip(1);
    let a_name = args.next().unwrap_or_else(|| "R4".into());
    let b_name = args.next().unwrap_or_else(|| "R8".into());
    let rows = table_iii();
    let lookup = |name: &str| {
        let r = row(&rows, name)
            .ok_or_else(|| asi_bench::Error::validation(name, "no such row"))?;
        BenchmarkScore::from_summary(r.classifier, r.mean, r.cv)
    };
    let (a, b) = (lookup(&a_name)?, lookup(&b_name)?);
    let d = compare(&a, &b)?;
    println!("{a_name} ({}) vs {b_name} ({})", a.classifier_id, b.classifier_id);
    println!("cv delta   {:+.3}%", d.cv_delta_percent);
    println!("mean delta {:+.3}%", d.mean_delta_percent);
    println!("preferred  {:?}", d.asi_ordering);

    let mut ranked = rows.clone();
    ranked.sort_by(|x, y| y.asi.total_cmp(&x.asi));
    println!("\ntop five by ASI:");
    for r in ranked.iter().take(5) {
        println!("  R{:<3} {:<28} {:.3}", r.row_id, r.classifier, r.asi);
    }
    Ok(())
}
