//! Evaluates an external classifier over the line protocol: the harness
//! writes one absolute image path per line to the child's stdin and reads
//! one label per line back. Here the "model" is a shell loop that guesses
//! from the file name.

use asi_bench::harness::{evaluate, ClassifierAdapter};
use asi_bench::metrics::score;
use asi_bench::registry::{load_registry, materialize, Corpus};
use asi_bench::synthetic::three_class_corpus;
use asi_bench::Seed;

const MODEL: &str = r#"while IFS= read -r p; do b=$(basename "$p"); echo "${b%%_*}"; done"#;

fn main() -> asi_bench::Result<()> {
    let dir = std::env::temp_dir().join(format!("asi-subprocess-{}", std::process::id()));
    let registry = load_registry("0 | clean | - | -\n1 | SP0.1 | SP 0.1 | -\n2 | ROT60 | ROT 60 | -\n")?;
    materialize(&three_class_corpus(3, 16, Seed(5)), &registry, Seed(1), &dir)?;
    let corpus = Corpus::open(&dir)?;

    let adapter = ClassifierAdapter::Subprocess {
        program: "sh".into(),
        args: vec!["-c".into(), MODEL.into()],
    };
    let series = evaluate(&adapter, &corpus, "filename-oracle")?;
    for (id, acc) in series.entries() {
        println!("condition {id}: {acc:.1}%");
    }
    println!("asi {:.3}", score(&series)?.asi);
    std::fs::remove_dir_all(&dir).map_err(|e| asi_bench::Error::io(&dir, e))?;
    Ok(())
}
