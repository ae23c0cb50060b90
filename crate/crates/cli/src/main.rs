use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use geovqa_core::dataset::{build, read_dataset, stats, write_json, write_jsonl};
use geovqa_core::eval::{infer_scale, prior_baseline, score_with, shuffle_manifest, vocabulary_for, Prediction};
use geovqa_core::ingest::{load_collection, CrsPolicy};
use geovqa_core::question::{apply_override, ElementCatalog, GenerationProfile, Scale, TemplateTable};
use geovqa_core::{Error, Result};

/// Builds question/answer datasets from vector geodata and scores
/// predictions against them.
#[derive(Debug, Parser)]
#[command(name = "geovqa", version)]
struct Cli {
    /// Log progress to standard error (RUST_LOG overrides).
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Crs {
    /// Coordinates must already be metric.
    Metric,
    /// Project lon/lat with a local equirectangular approximation.
    Equirectangular,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScaleArg {
    Lr,
    Hr,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate triplets, manifest and report from a GeoJSON collection.
    Generate {
        #[arg(long)]
        geo: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads for per-tile generation (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Profile override, `key=value`; dotted keys reach nested tables.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[arg(long, value_enum, default_value = "metric")]
        crs: Crs,
        /// Element catalog replacing the built-in one.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Template table replacing the built-in one.
        #[arg(long)]
        templates: Option<PathBuf>,
    },
    /// Print answer distribution statistics of a dataset.
    Stats {
        #[arg(long)]
        dataset: PathBuf,
    },
    /// Score a predictions file.
    Evaluate {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Answer vocabulary to score against (default: inferred).
        #[arg(long, value_enum)]
        scale: Option<ScaleArg>,
    },
    /// Reassign every question to a random tile of its split.
    Shuffle {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit the per-type modal answer on train, predict and score test.
    Baseline {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn nonempty_dataset(path: &Path) -> Result<Vec<geovqa_core::dataset::QATriplet>> {
    let triplets = read_dataset(path)?;
    if triplets.is_empty() {
        return Err(Error::Validation(format!("{} contains no triplets", path.display())));
    }
    Ok(triplets)
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn write_report(dir: &Path, report: &geovqa_core::eval::MetricsReport) -> Result<()> {
    write_json(report, dir.join("report.json"))?;
    write_text(&dir.join("confusion.csv"), &report.confusion_csv())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate {
            geo,
            profile,
            out,
            workers,
            overrides,
            crs,
            catalog,
            templates,
        } => {
            let mut value = GenerationProfile::read_value(&profile)?;
            for o in &overrides {
                apply_override(&mut value, o)?;
            }
            let profile = GenerationProfile::from_value(value)?;
            let catalog = match catalog {
                Some(p) => ElementCatalog::load(p)?,
                None => ElementCatalog::default(),
            };
            let templates = match templates {
                Some(p) => TemplateTable::load(p)?,
                None => TemplateTable::default(),
            };
            let policy = match crs {
                Crs::Metric => CrsPolicy::RequireMetric,
                Crs::Equirectangular => CrsPolicy::EquirectangularApprox,
            };
            let collection = load_collection(&geo, policy)?;
            log::info!("loaded {} objects from {}", collection.len(), geo.display());
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(n) = workers {
                if n == 0 {
                    return Err(Error::Validation("--workers must be at least 1".into()));
                }
                pool = pool.num_threads(n);
            }
            let pool = pool.build().map_err(|e| Error::Validation(e.to_string()))?;
            let result = pool.install(|| build(&collection, &profile, &catalog, &templates))?;
            result.write(&out)?;
            log::info!("wrote {} triplets to {}", result.triplets.len(), out.display());
            Ok(())
        }
        Command::Stats { dataset } => {
            let triplets = nonempty_dataset(&dataset)?;
            let text = serde_json::to_string_pretty(&stats(&triplets)).expect("report serializes");
            println!("{text}");
            Ok(())
        }
        Command::Evaluate {
            dataset,
            predictions,
            out,
            scale,
        } => {
            let triplets = nonempty_dataset(&dataset)?;
            let predictions: Vec<Prediction> = geovqa_core::dataset::read_jsonl(&predictions)?;
            let scale = match scale {
                Some(ScaleArg::Lr) => Scale::Low,
                Some(ScaleArg::Hr) => Scale::High,
                None => infer_scale(&triplets),
            };
            let report = score_with(&predictions, &triplets, &vocabulary_for(&triplets, scale))?;
            create_dir(&out)?;
            write_report(&out, &report)?;
            println!("OA {:.4}  AA {:.4}  n {}", report.oa, report.aa, report.n_scored);
            Ok(())
        }
        Command::Shuffle { dataset, seed, out } => {
            let triplets = nonempty_dataset(&dataset)?;
            write_jsonl(&shuffle_manifest(&triplets, seed), &out)
        }
        Command::Baseline { train, test, out } => {
            let train = nonempty_dataset(&train)?;
            let test = nonempty_dataset(&test)?;
            let model = prior_baseline(&train)?;
            let predictions = model.predict(&test);
            let scale = infer_scale(&test);
            let report = score_with(&predictions, &test, &vocabulary_for(&test, scale))?;
            create_dir(&out)?;
            write_json(&model, out.join("baseline.json"))?;
            write_jsonl(&predictions, out.join("predictions.jsonl"))?;
            write_report(&out, &report)?;
            println!("OA {:.4}  AA {:.4}  n {}", report.oa, report.aa, report.n_scored);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let default = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(default)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}
