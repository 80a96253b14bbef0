//! End to end in memory: synthesize, perturb, evaluate the built-in
//! nearest-centroid classifier, and score it.

use asi_bench::harness::{evaluate, ClassifierAdapter};
use asi_bench::metrics::score;
use asi_bench::registry::{default_registry, materialize, Corpus};
use asi_bench::synthetic::three_class_corpus;
use asi_bench::Seed;

fn main() -> asi_bench::Result<()> {
    let dir = std::env::temp_dir().join(format!("asi-toy-{}", std::process::id()));
    let registry = default_registry();
    materialize(&three_class_corpus(10, 32, Seed(7)), &registry, Seed(42), &dir)?;
    let corpus = Corpus::open(&dir)?;

    let series = evaluate(&ClassifierAdapter::Toy, &corpus, "toy")?;
    let mut worst: Vec<(u32, f64)> = series.entries().to_vec();
    worst.sort_by(|a, b| a.1.total_cmp(&b.1));
    for (id, acc) in worst.iter().take(5) {
        println!("{:<14} {acc:6.2}%", registry.get(*id).unwrap().label);
    }
    let s = score(&series)?;
    println!(
        "mean {:.3}%  cv {:.3}%  asi {:.3}",
        s.mean_accuracy_percent, s.cv_percent, s.asi
    );
    std::fs::remove_dir_all(&dir).map_err(|e| asi_bench::Error::io(&dir, e))?;
    Ok(())
}
