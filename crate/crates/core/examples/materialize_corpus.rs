//! Builds a synthetic clean corpus and materializes all 69 default
//! conditions, then verifies the manifest checksums.
//!
//! cargo run --example materialize_corpus -- [OUT_DIR]

use std::path::PathBuf;

use asi_bench::registry::{default_registry, materialize, Corpus};
use asi_bench::synthetic::three_class_corpus;
use asi_bench::Seed;

fn main() -> asi_bench::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    let clean = three_class_corpus(4, 24, Seed(1));
    let registry = default_registry();
    let manifest = materialize(&clean, &registry, Seed(42), &out)?;
    println!(
        "{} conditions x {} images = {} files in {}",
        registry.len(),
        clean.len(),
        manifest.entries.len(),
        out.display()
    );
    for c in registry.conditions().iter().take(4) {
        let steps: Vec<String> = c.steps.iter().map(ToString::to_string).collect();
        println!("  c{:03} {:<12} [{}]", c.id, c.label, steps.join(", "));
    }
    Corpus::open(&out)?.verify()?;
    println!("checksums verified");
    Ok(())
}
