//! Argument definitions and dispatch.

mod common;
mod measure;
mod pipeline;
mod replay;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::Staged;
use crate::report::RunReport;

pub use common::data_dir;

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "ggd", version, about = "Grammatical-gender disentanglement and bias tests for word embeddings")]
pub struct Cli {
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Iteratively remove the grammatical-gender direction from a table.
    Disentangle(DisentangleArgs),
    /// Project a saved hyperplane stack out of another table.
    ApplyStack(ApplyStackArgs),
    /// WEAT tests from a stimulus file.
    Weat(WeatArgs),
    /// Single-category WEAT for individual words.
    ScWeat(ScWeatArgs),
    /// WEAT with inanimate feminine vs. masculine nouns as targets.
    GgWeat(GgWeatArgs),
    /// Correlation of valence associations with human ratings.
    Valnorm(ValnormArgs),
    /// 3CosAdd analogy accuracy.
    Analogy(AnalogyArgs),
    /// Same- vs. different-gender similarity gap and its reduction.
    Pairdist(PairdistArgs),
    /// Per-noun single-category GG-WEAT before and after disentanglement.
    Sweep(SweepArgs),
    /// Synthetic table with a planted gender direction.
    Synth(SynthArgs),
    /// Two principal coordinates of a gendered-noun sample.
    PcaCoords(PcaArgs),
    /// Re-run the command recorded in a report and compare results.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TableArgs {
    /// Load only the first N words (plus every word the command needs).
    #[arg(long)]
    pub vocab_limit: Option<usize>,
    /// Retry lookups in lowercase when the exact word is absent.
    #[arg(long)]
    pub lowercase_fallback: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PMode {
    Auto,
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TestArgs {
    /// Smallest usable set size.
    #[arg(long, default_value_t = ggd_core::MIN_SET_SIZE)]
    pub min_set_size: usize,
    /// Drop missing words with a warning and trim unequal target sets.
    #[arg(long)]
    pub permissive: bool,
    #[arg(long, value_enum, default_value_t = PMode::Auto)]
    pub p_mode: PMode,
    /// Monte Carlo permutations.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// Largest partition count enumerated exactly in auto mode.
    #[arg(long, default_value_t = 200_000)]
    pub exact_limit: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    /// Table measured first (usually the raw embeddings).
    #[arg(long, alias = "embeddings")]
    pub before: PathBuf,
    /// Optional second table (usually the disentangled embeddings).
    #[arg(long)]
    pub after: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StimuliArgs {
    /// Stimulus file; defaults to `<data dir>/stimuli/<language>.toml`.
    #[arg(long)]
    pub stimuli: Option<PathBuf>,
    #[arg(long)]
    pub language: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LexiconArgs {
    /// `word<TAB>F|M` noun list.
    #[arg(long)]
    pub lexicon: PathBuf,
    /// Animate nouns to exclude, one per line.
    #[arg(long)]
    pub animacy: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DisentangleArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[command(flatten)]
    pub lexicon: LexiconArgs,
    #[arg(long, default_value = "xx")]
    pub language: String,
    /// Cap on the number of projections.
    #[arg(long, default_value_t = 15)]
    pub iterations: usize,
    #[arg(long, default_value_t = 0.52)]
    pub stop_accuracy: f64,
    /// Nouns sampled per gender class.
    #[arg(long, default_value_t = 3000)]
    pub per_class: usize,
    /// Reuse one sample for every iteration instead of resampling.
    #[arg(long)]
    pub fixed_sample: bool,
    #[arg(long, default_value_t = 1e-2)]
    pub regularization: f64,
    #[arg(long, default_value_t = 20)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.1)]
    pub holdout: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub table: TableArgs,
    #[arg(long)]
    pub out_embeddings: Option<PathBuf>,
    /// Stack text file; a `.json` sidecar is written next to it.
    #[arg(long)]
    pub out_stack: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ApplyStackArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[arg(long)]
    pub stack: PathBuf,
    #[command(flatten)]
    pub table: TableArgs,
    #[arg(long, required = true)]
    pub out_embeddings: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WeatArgs {
    #[command(flatten)]
    pub tables: CompareArgs,
    #[command(flatten)]
    pub stimuli: StimuliArgs,
    /// Tests to run (default: every test in the file).
    #[arg(long = "test")]
    pub tests: Vec<String>,
    #[command(flatten)]
    pub test: TestArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScWeatArgs {
    #[command(flatten)]
    pub tables: CompareArgs,
    #[command(flatten)]
    pub stimuli: StimuliArgs,
    #[arg(long = "word", required = true)]
    pub words: Vec<String>,
    /// Attribute set A.
    #[arg(long)]
    pub a: String,
    /// Attribute set B.
    #[arg(long)]
    pub b: String,
    #[command(flatten)]
    pub test: TestArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GgAttributeArgs {
    /// Semantically feminine attribute set (default: the stimulus file's choice).
    #[arg(long)]
    pub feminine_attributes: Option<String>,
    #[arg(long)]
    pub masculine_attributes: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GgWeatArgs {
    #[command(flatten)]
    pub tables: CompareArgs,
    #[command(flatten)]
    pub stimuli: StimuliArgs,
    #[command(flatten)]
    pub lexicon: LexiconArgs,
    /// Similarity pairs from which opposite-gender targets are drawn.
    #[arg(long)]
    pub pairs: PathBuf,
    #[arg(long, default_value_t = 6.0)]
    pub min_score: f64,
    #[arg(long)]
    pub max_per_set: Option<usize>,
    #[command(flatten)]
    pub attributes: GgAttributeArgs,
    #[command(flatten)]
    pub test: TestArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValnormArgs {
    #[command(flatten)]
    pub tables: CompareArgs,
    #[command(flatten)]
    pub stimuli: StimuliArgs,
    /// `word<TAB>valence` ratings.
    #[arg(long)]
    pub norms: PathBuf,
    #[arg(long, default_value = "pleasant")]
    pub pleasant: String,
    #[arg(long, default_value = "unpleasant")]
    pub unpleasant: String,
    #[command(flatten)]
    pub test: TestArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnalogyArgs {
    #[command(flatten)]
    pub tables: CompareArgs,
    #[arg(long)]
    pub questions: PathBuf,
    /// Sections to score (default: all).
    #[arg(long = "section")]
    pub sections: Vec<String>,
    /// Only the first N table rows are answer candidates.
    #[arg(long)]
    pub candidate_limit: Option<usize>,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PairdistArgs {
    #[arg(long)]
    pub raw: PathBuf,
    #[arg(long)]
    pub disentangled: PathBuf,
    #[arg(long)]
    pub english: PathBuf,
    /// Gendered-language pairs.
    #[arg(long)]
    pub pairs: PathBuf,
    /// English translations, line-aligned with `--pairs`.
    #[arg(long)]
    pub english_pairs: PathBuf,
    #[command(flatten)]
    pub lexicon: LexiconArgs,
    #[arg(long, default_value = "xx")]
    pub language: String,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Signed,
    Magnitude,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub before: PathBuf,
    #[arg(long)]
    pub after: PathBuf,
    #[command(flatten)]
    pub stimuli: StimuliArgs,
    #[command(flatten)]
    pub lexicon: LexiconArgs,
    #[command(flatten)]
    pub attributes: GgAttributeArgs,
    /// Nouns sampled per gender class.
    #[arg(long, default_value_t = 1000)]
    pub per_class: usize,
    /// Rule used for the headline fraction; both are always reported.
    #[arg(long, value_enum, default_value_t = Rule::Signed)]
    pub rule: Rule,
    #[command(flatten)]
    pub test: TestArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub table: TableArgs,
    /// Per-word CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 300)]
    pub dimension: usize,
    #[arg(long, default_value_t = 3000)]
    pub per_class: usize,
    /// Planted signal strength.
    #[arg(long, default_value_t = 5.0)]
    pub alpha: f64,
    /// Jitter on the planted coefficient.
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    /// Masculine signal strength relative to feminine.
    #[arg(long, default_value_t = 1.0)]
    pub masculine_rate: f64,
    /// Strength of a second, orthogonal signal carried by part of each class.
    #[arg(long)]
    pub secondary_strength: Option<f64>,
    #[arg(long, default_value_t = 0.3)]
    pub secondary_coverage: f64,
    #[arg(long, default_value_t = 0)]
    pub neutral_words: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, required = true)]
    pub out_embeddings: Option<PathBuf>,
    #[arg(long)]
    pub out_lexicon: Option<PathBuf>,
    /// Gender-free base table.
    #[arg(long)]
    pub out_base: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PcaArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[command(flatten)]
    pub lexicon: LexiconArgs,
    #[arg(long, default_value = "xx")]
    pub language: String,
    #[arg(long, default_value_t = 500)]
    pub per_class: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub table: TableArgs,
    /// `word,gender,pc1,pc2` rows.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReplayArgs {
    /// Report to reproduce.
    pub source: PathBuf,
    /// Directory for the replayed outputs (default: a temporary directory).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Disentangle(_) => "disentangle",
            Command::ApplyStack(_) => "apply-stack",
            Command::Weat(_) => "weat",
            Command::ScWeat(_) => "sc-weat",
            Command::GgWeat(_) => "gg-weat",
            Command::Valnorm(_) => "valnorm",
            Command::Analogy(_) => "analogy",
            Command::Pairdist(_) => "pairdist",
            Command::Sweep(_) => "sweep",
            Command::Synth(_) => "synth",
            Command::PcaCoords(_) => "pca-coords",
            Command::Replay(_) => "replay",
        }
    }

    /// Every output path the command writes, for redirection on replay.
    fn outputs_mut(&mut self) -> Vec<&mut Option<PathBuf>> {
        match self {
            Command::Disentangle(a) => vec![&mut a.out_embeddings, &mut a.out_stack],
            Command::ApplyStack(a) => vec![&mut a.out_embeddings],
            Command::Sweep(a) => vec![&mut a.csv],
            Command::Synth(a) => vec![&mut a.out_embeddings, &mut a.out_lexicon, &mut a.out_base],
            Command::PcaCoords(a) => vec![&mut a.csv],
            _ => Vec::new(),
        }
    }
}

/// A finished command: its report and the staged output files.
pub struct Execution {
    pub report: RunReport,
    pub staged: Staged,
}

/// Runs a parsed command without writing the report or committing outputs.
pub fn execute(cli: &Cli, argv: Vec<String>) -> Result<Execution> {
    let config = serde_json::to_value(&cli.command).expect("arguments serialize");
    let mut ctx = common::Ctx::new(RunReport::new(cli.command.name(), argv, config));
    let results = match &cli.command {
        Command::Disentangle(a) => pipeline::disentangle(a, &mut ctx)?,
        Command::ApplyStack(a) => pipeline::apply_stack(a, &mut ctx)?,
        Command::Weat(a) => measure::weat(a, &mut ctx)?,
        Command::ScWeat(a) => measure::sc_weat(a, &mut ctx)?,
        Command::GgWeat(a) => measure::gg_weat(a, &mut ctx)?,
        Command::Valnorm(a) => measure::valnorm(a, &mut ctx)?,
        Command::Analogy(a) => measure::analogy(a, &mut ctx)?,
        Command::Pairdist(a) => measure::pairdist(a, &mut ctx)?,
        Command::Sweep(a) => measure::sweep(a, &mut ctx)?,
        Command::Synth(a) => pipeline::synth(a, &mut ctx)?,
        Command::PcaCoords(a) => pipeline::pca_coords(a, &mut ctx)?,
        Command::Replay(a) => replay::replay(a, &mut ctx)?,
    };
    Ok(ctx.finish(results))
}

/// Writes the report (to `cli.report` or standard output) after committing
/// every staged output. Nothing is written if any step fails.
pub fn run(cli: &Cli, argv: Vec<String>) -> Result<()> {
    let Execution { report, mut staged } = execute(cli, argv)?;
    let json = report.to_json();
    match &cli.report {
        Some(path) => {
            staged.write(path, |w| w.write_all(json.as_bytes()))?;
            staged.commit()
        }
        None => {
            staged.commit()?;
            print!("{json}");
            Ok(())
        }
    }
}

/// Parses `argv` (without the program name) as a command line.
pub fn parse(argv: &[String]) -> std::result::Result<Cli, clap::Error> {
    Cli::try_parse_from(std::iter::once("ggd".to_string()).chain(argv.iter().cloned()))
}

fn redirect(cli: &mut Cli, dir: &Path) {
    for slot in cli.command.outputs_mut() {
        if let Some(p) = slot {
            let name = p.file_name().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("output"));
            *p = dir.join(name);
        }
    }
    cli.report = None;
}

impl From<clap::Error> for Error {
    fn from(e: clap::Error) -> Self {
        Error::Usage(e.to_string())
    }
}
