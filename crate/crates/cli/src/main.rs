//! `neardup` — find near-duplicate documents in a directory of text files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use neardup::{
    cache, corpus, engine, CompareDelta, FilterStrategy, RunConfig, ShingleProfile, StatsReport,
};

/// Exit code when an audit finds falsely dismissed pairs; distinct from
/// generic failures (1) and usage errors (2) so CI can gate on filter safety.
const EXIT_MISSED_PAIRS: u8 = 3;

#[derive(Parser)]
#[command(
    name = "neardup",
    version,
    about = "Near-duplicate document detection via k-shingles and Jaccard similarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one filter strategy over a corpus and write pair/stats reports.
    Run(RunArgs),
    /// Run set-length and weighted-length on the same corpus and diff them.
    Compare(CompareArgs),
    /// Check a strategy's recall against the all-pairs oracle.
    Audit(AuditArgs),
    /// Print one document's shingle profile.
    Shingle(ShingleArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Shingle length in characters.
    #[arg(long, default_value_t = 5, value_parser = parse_k)]
    k: usize,

    /// Minimum Jaccard similarity in (0, 1].
    #[arg(long, default_value_t = 0.9, value_parser = parse_threshold)]
    threshold: f64,

    /// Keep whitespace exactly as read instead of collapsing runs to a space.
    #[arg(long)]
    no_normalize_whitespace: bool,

    /// Lowercase documents before shingling.
    #[arg(long)]
    lowercase: bool,

    /// Worker threads for scoring (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
}

impl CommonArgs {
    fn config(&self) -> anyhow::Result<RunConfig> {
        let mut config = RunConfig::new(self.k, self.threshold)?;
        config.normalize_whitespace = !self.no_normalize_whitespace;
        config.lowercase = self.lowercase;
        Ok(config)
    }
}

#[derive(Args)]
struct CorpusArgs {
    /// Directory of text documents.
    corpus_root: PathBuf,

    /// Profile cache file: loaded if it exists, written after ingestion
    /// otherwise.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    corpus: CorpusArgs,

    /// Candidate filter strategy: all-pairs, set-length or weighted-length.
    #[arg(long, default_value = "weighted-length")]
    strategy: FilterStrategy,

    /// Directory for pairs.csv and stats.json.
    #[arg(long)]
    out: PathBuf,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    corpus: CorpusArgs,

    /// Directory for pairs.csv and stats.json.
    #[arg(long)]
    out: PathBuf,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    corpus: CorpusArgs,

    /// Strategy to audit against the all-pairs oracle.
    #[arg(long, default_value = "weighted-length")]
    strategy: FilterStrategy,

    /// Optional report directory.
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ShingleArgs {
    /// A single text file.
    file: PathBuf,

    #[command(flatten)]
    common: CommonArgs,
}

fn parse_k(value: &str) -> Result<usize, String> {
    let k: usize = value.parse().map_err(|e| format!("{e}"))?;
    if k < 1 {
        return Err("k must be >= 1".to_owned());
    }
    Ok(k)
}

fn parse_threshold(value: &str) -> Result<f64, String> {
    let j: f64 = value.parse().map_err(|e| format!("{e}"))?;
    if !(j > 0.0 && j <= 1.0) {
        return Err(format!("threshold must be in (0, 1], got {j}"));
    }
    Ok(j)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Shingle(args) => cmd_shingle(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn configure_jobs(jobs: Option<usize>) -> anyhow::Result<()> {
    if let Some(jobs) = jobs {
        if jobs < 1 {
            bail!("--jobs must be >= 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("failed to configure worker pool")?;
    }
    Ok(())
}

/// Load profiles from the cache when one exists, otherwise ingest the
/// corpus (and populate the cache if a path was given).
fn load_profiles(args: &CorpusArgs, config: &RunConfig) -> anyhow::Result<Vec<ShingleProfile>> {
    if let Some(cache_path) = args.cache.as_deref().filter(|p| p.exists()) {
        let profiles = cache::load_profiles(cache_path, config)
            .with_context(|| format!("loading cache {}", cache_path.display()))?;
        let (kept, empty): (Vec<_>, Vec<_>) = profiles.into_iter().partition(|p| !p.is_empty());
        if !empty.is_empty() {
            eprintln!("warning: ignoring {} empty cached profiles", empty.len());
        }
        return Ok(kept);
    }
    let (manifest, profiles) = corpus::ingest(&args.corpus_root, config)?;
    if !manifest.skipped.is_empty() {
        eprintln!("warning: skipped {} files", manifest.skipped.len());
    }
    if let Some(cache_path) = &args.cache {
        cache::save_profiles(cache_path, &profiles, config)
            .with_context(|| format!("writing cache {}", cache_path.display()))?;
    }
    Ok(profiles)
}

fn summary_line(stats: &neardup::RunStats) -> String {
    format!(
        "strategy={} docs={} comparisons={} dismissed={} similar={} time_ms={}",
        stats.strategy,
        stats.doc_count,
        stats.comparisons,
        stats.dismissed,
        stats.similar_pairs,
        stats.wall_time_ms
    )
}

fn cmd_run(args: RunArgs) -> anyhow::Result<ExitCode> {
    configure_jobs(args.common.jobs)?;
    let config = args.common.config()?;
    let profiles = load_profiles(&args.corpus, &config)?;
    let output = engine::run(&profiles, args.strategy, config.threshold_j)?;
    let report = StatsReport {
        runs: vec![output.stats.clone()],
        audit: None,
        delta: None,
    };
    neardup::write_report(&output.records, &report, &args.out)?;
    println!("{}", summary_line(&output.stats));
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(args: CompareArgs) -> anyhow::Result<ExitCode> {
    configure_jobs(args.common.jobs)?;
    let config = args.common.config()?;
    let profiles = load_profiles(&args.corpus, &config)?;

    let set_based = engine::run(&profiles, FilterStrategy::SetLength, config.threshold_j)?;
    let weighted = engine::run(&profiles, FilterStrategy::WeightedLength, config.threshold_j)?;
    let delta = CompareDelta::new(
        &(set_based.records.clone(), set_based.stats.clone()),
        &(weighted.records.clone(), weighted.stats.clone()),
    );

    println!("{}", summary_line(&set_based.stats));
    println!("{}", summary_line(&weighted.stats));
    println!(
        "comparison reduction: {:.1}%",
        delta.comparison_reduction * 100.0
    );
    if delta.divergence.is_empty() {
        println!(
            "result sets identical ({} pairs)",
            set_based.stats.similar_pairs
        );
    } else {
        println!(
            "DIVERGENCE: result sets differ by {} pairs",
            delta.divergence.len()
        );
        for record in &delta.divergence {
            println!("  diverged: {} {} {:.6}", record.doc_a(), record.doc_b(), record.score());
        }
    }

    // The pairs file carries the set-length results: that filter is exact,
    // so its output is the complete similar-pair set.
    let report = StatsReport {
        runs: vec![set_based.stats, weighted.stats],
        audit: None,
        delta: Some(delta),
    };
    neardup::write_report(&set_based.records, &report, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_audit(args: AuditArgs) -> anyhow::Result<ExitCode> {
    configure_jobs(args.common.jobs)?;
    let config = args.common.config()?;
    let profiles = load_profiles(&args.corpus, &config)?;
    let outcome = engine::audit(&profiles, args.strategy, config.threshold_j)?;

    println!(
        "strategy={} oracle_pairs={} found={} recall={:.4}",
        outcome.audit.strategy,
        outcome.audit.oracle_pairs,
        outcome.audit.found_pairs,
        outcome.audit.recall
    );
    for record in &outcome.audit.missed {
        println!(
            "  missed: {} {} {:.6}",
            record.doc_a(),
            record.doc_b(),
            record.score()
        );
    }

    if let Some(out) = &args.out {
        let report = StatsReport {
            runs: vec![outcome.oracle.stats, outcome.subject.stats],
            audit: Some(outcome.audit.clone()),
            delta: None,
        };
        neardup::write_report(&outcome.subject.records, &report, out)?;
    }

    if outcome.audit.missed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_MISSED_PAIRS))
    }
}

fn cmd_shingle(args: ShingleArgs) -> anyhow::Result<ExitCode> {
    let config = args.common.config()?;
    let raw = std::fs::read(&args.file)
        .with_context(|| format!("reading {}", args.file.display()))?;
    let (text, lossy) = corpus::normalize(&raw, &config);
    if lossy {
        eprintln!(
            "warning: {}: invalid UTF-8 replaced during decode",
            args.file.display()
        );
    }
    let doc_id = args.file.to_string_lossy().into_owned();
    let profile = neardup::build_profile(doc_id, &text, &config);
    for (shingle, count) in profile.entries() {
        println!("{shingle:?}\t{count}");
    }
    println!("set_length: {}", profile.set_length());
    println!("weighted_length: {}", profile.weighted_length());
    Ok(ExitCode::SUCCESS)
}

fn _assert_paths_are_paths(_: &Path) {}
