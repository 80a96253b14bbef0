//! The `asi` command line.
//!
//! ```text
//! asi synth    --out DIR --seed N [--per-class N] [--size PX]
//! asi perturb  --input DIR --out DIR --seed N [--registry PATH] [--group-size N]
//! asi evaluate --corpus DIR --adapter {toy|subprocess:CMD|file:PATH} --out PATH
//! asi score    --input ACCURACY_TABLE [--out PATH]
//! asi compare  (--scores PATH | --table-iii) A B
//! asi surface  --out PATH [--format csv|json] [--mean-range LO,HI] [--cv-range LO,HI]
//! asi report   (--scores PATH | --table-iii) [--out PATH]
//! ```
//!
//! Exit status: 0 on success, 1 on validation errors, 2 on I/O errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::harness::{self, ClassifierAdapter};
use crate::metrics::{self, Preferred};
use crate::registry::{self, ConditionRegistry, Corpus, LabeledImage};
use crate::report::{self, ScoreRecord};
use crate::seed::Seed;
use crate::surface::{self, GridFormat, Resolution};
use crate::{fixture, synthetic};

#[derive(Debug, Parser)]
#[command(name = "asi", version, about = "Two-factor perturbation benchmarks scored with the Accuracy-Stability Index")]
pub struct Cli {
    /// Worker threads for corpus generation and verification.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic 3-class clean corpus with labels.csv.
    Synth(SynthConfig),
    /// Materialize one corrupted image group per registry condition.
    Perturb(PerturbConfig),
    /// Measure per-condition accuracy of a classifier over a corpus.
    Evaluate(EvaluateConfig),
    /// Score accuracy tables: CV, mean accuracy and ASI per classifier.
    Score(ScoreConfig),
    /// Relative CV and mean deltas of B against baseline A.
    Compare(CompareConfig),
    /// Sample ASI over a (mean, CV) grid.
    Surface(SurfaceConfig),
    /// Render a score table in the published table layout.
    Report(ReportConfig),
}

#[derive(Debug, Args)]
pub struct SynthConfig {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub per_class: usize,
    #[arg(long, default_value_t = 32)]
    pub size: usize,
}

#[derive(Debug, Args)]
pub struct PerturbConfig {
    /// Clean corpus directory containing labels.csv.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Registry document; the built-in 69-condition registry by default.
    #[arg(long)]
    pub registry: Option<PathBuf>,
    #[arg(long)]
    pub group_size: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvaluateConfig {
    #[arg(long)]
    pub corpus: PathBuf,
    /// `toy`, `subprocess:CMD ARGS...` or `file:PATH`.
    #[arg(long)]
    pub adapter: String,
    /// Accuracy table destination.
    #[arg(long)]
    pub out: PathBuf,
    /// Classifier id written into the table.
    #[arg(long)]
    pub classifier_id: Option<String>,
}

#[derive(Debug, Args)]
pub struct ScoreConfig {
    /// Accuracy table (`classifier,condition,accuracy`).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScoreSource {
    /// Score table or published-fixture CSV.
    #[arg(long, conflicts_with = "table_iii", required_unless_present = "table_iii")]
    pub scores: Option<PathBuf>,
    /// Use the bundled published table.
    #[arg(long)]
    pub table_iii: bool,
}

#[derive(Debug, Args)]
pub struct CompareConfig {
    #[command(flatten)]
    pub source: ScoreSource,
    /// Baseline classifier id (or `R<n>` for fixture rows).
    pub a: String,
    pub b: String,
}

#[derive(Debug, Args)]
pub struct SurfaceConfig {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = "csv")]
    pub format: GridFormat,
    #[arg(long, value_parser = parse_range, default_value = "0,100")]
    pub mean_range: (f64, f64),
    #[arg(long, value_parser = parse_range, default_value = "0,25")]
    pub cv_range: (f64, f64),
    /// Samples per axis, `N` or `MEANxCV`.
    #[arg(long, default_value = "101x51")]
    pub resolution: Resolution,
    /// Skip writing plot_surface.py next to a CSV grid.
    #[arg(long)]
    pub no_script: bool,
}

#[derive(Debug, Args)]
pub struct ReportConfig {
    #[command(flatten)]
    pub source: ScoreSource,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo = lo.trim().parse().map_err(|_| format!("bad number {lo:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad number {hi:?}"))?;
    Ok((lo, hi))
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    let pool = match cli.jobs {
        Some(0) => return Err(Error::InvalidParameter("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n),
        None => rayon::ThreadPoolBuilder::new(),
    }
    .build()
    .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Synth(c) => cmd_synth(&c),
        Command::Perturb(c) => cmd_perturb(&c),
        Command::Evaluate(c) => cmd_evaluate(&c),
        Command::Score(c) => cmd_score(&c),
        Command::Compare(c) => cmd_compare(&c),
        Command::Surface(c) => cmd_surface(&c),
        Command::Report(c) => cmd_report(&c),
    })
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_synth(c: &SynthConfig) -> Result<()> {
    if c.per_class == 0 || c.size == 0 {
        return Err(Error::InvalidParameter("--per-class and --size must be positive".into()));
    }
    let images = synthetic::three_class_corpus(c.per_class, c.size, Seed(c.seed));
    registry::write_clean_dir(&c.out, &images)?;
    eprintln!("wrote {} images to {}", images.len(), c.out.display());
    Ok(())
}

pub fn cmd_perturb(c: &PerturbConfig) -> Result<()> {
    if !c.input.is_dir() {
        return Err(Error::io(
            &c.input,
            std::io::Error::new(std::io::ErrorKind::NotFound, "clean corpus directory not found"),
        ));
    }
    let mut reg: ConditionRegistry = match &c.registry {
        Some(path) => registry::load_registry(&read_text(path)?)?,
        None => registry::default_registry(),
    };
    if let Some(n) = c.group_size {
        reg = reg.with_group_size(n)?;
    }
    let clean = LabeledImage::load_dir(&c.input)?;
    let manifest = registry::materialize(&clean, &reg, Seed(c.seed), &c.out)?;
    eprintln!(
        "wrote {} groups x {} images ({} files) to {}",
        reg.len(),
        manifest.group_size,
        manifest.entries.len(),
        c.out.display()
    );
    Ok(())
}

pub fn cmd_evaluate(c: &EvaluateConfig) -> Result<()> {
    let adapter: ClassifierAdapter = c.adapter.parse()?;
    let id = c.classifier_id.clone().unwrap_or_else(|| default_classifier_id(&adapter));
    let corpus = Corpus::open(&c.corpus)?;
    let series = harness::evaluate(&adapter, &corpus, &id)?;
    write_output(Some(&c.out), &harness::write_accuracy_table(&[series]))
}

fn default_classifier_id(adapter: &ClassifierAdapter) -> String {
    let stem = |p: &Path| p.file_stem().map(|s| s.to_string_lossy().into_owned());
    match adapter {
        ClassifierAdapter::Toy => "toy".into(),
        ClassifierAdapter::Subprocess { program, .. } => {
            stem(Path::new(program)).unwrap_or_else(|| program.clone())
        }
        ClassifierAdapter::PredictionsFile(p) => stem(p).unwrap_or_else(|| "predictions".into()),
    }
}

pub fn cmd_score(c: &ScoreConfig) -> Result<()> {
    let series = harness::load_accuracy_table(&read_text(&c.input)?)?;
    let scores = series
        .iter()
        .map(metrics::score)
        .collect::<Result<Vec<_>>>()?;
    write_output(c.out.as_deref(), &report::write_score_table(&scores))
}

fn load_scores(source: &ScoreSource) -> Result<Vec<ScoreRecord>> {
    match &source.scores {
        Some(path) => report::load_score_table(&read_text(path)?),
        None => Ok(fixture::table_iii().into_iter().map(ScoreRecord::from).collect()),
    }
}

fn find<'a>(records: &'a [ScoreRecord], name: &str) -> Result<&'a ScoreRecord> {
    let mut hits = records.iter().filter(|r| r.matches(name));
    match (hits.next(), hits.next()) {
        (Some(r), None) => Ok(r),
        (None, _) => Err(Error::validation(format!("classifier {name}"), "not found in score table")),
        (Some(_), Some(_)) => Err(Error::validation(
            format!("classifier {name}"),
            "ambiguous; matches several rows",
        )),
    }
}

pub fn cmd_compare(c: &CompareConfig) -> Result<()> {
    let records = load_scores(&c.source)?;
    let a = find(&records, &c.a)?;
    let b = find(&records, &c.b)?;
    let delta = metrics::compare(&a.score, &b.score)?;
    let describe = |tag: &str, name: &str, r: &ScoreRecord| {
        format!(
            "{tag}: {name} [{}] cv {:.3}  mean {:.3}  asi {:.3}\n",
            r.score.classifier_id, r.score.cv_percent, r.score.mean_accuracy_percent, r.score.asi
        )
    };
    let verdict = match delta.asi_ordering {
        Preferred::A => format!("preferred: {} (higher ASI)", c.a),
        Preferred::B => format!("preferred: {} (higher ASI)", c.b),
        Preferred::Tie => "preferred: tie (equal ASI)".to_string(),
    };
    print!(
        "{}{}cv delta: {:+.3}%\nmean delta: {:+.3}%\n{verdict}\n",
        describe("a", &c.a, a),
        describe("b", &c.b, b),
        delta.cv_delta_percent,
        delta.mean_delta_percent,
    );
    Ok(())
}

pub fn cmd_surface(c: &SurfaceConfig) -> Result<()> {
    let grid = surface::surface_grid(c.mean_range, c.cv_range, c.resolution)?;
    surface::emit_grid(&grid, c.format, &c.out)?;
    if c.format == GridFormat::Csv && !c.no_script {
        let name = c
            .out
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "asi_surface.csv".into());
        let script = c.out.with_file_name("plot_surface.py");
        fs::write(&script, surface::plot_script(&name)).map_err(|e| Error::io(&script, e))?;
    }
    Ok(())
}

pub fn cmd_report(c: &ReportConfig) -> Result<()> {
    let records = load_scores(&c.source)?;
    write_output(c.out.as_deref(), &report::render_report(&records))
}
