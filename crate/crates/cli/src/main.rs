//! `mutaprobe`: mutate benchmarks, verify variants, evaluate models, report.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use mutaprobe_core::harness::endpoint::{ChatEndpoint, OpenAiEndpoint, Retrying};
use mutaprobe_core::harness::SystemClock;
use mutaprobe_core::pipeline::config::ModelEntry;
use mutaprobe_core::pipeline::{self, EvaluateOptions, MutateOptions, RunDir, Settings};
use mutaprobe_core::verifier::{Sandbox, DEFAULT_TIMEOUT};

#[derive(Parser)]
#[command(name = "mutaprobe", version, about = "Probe code models with semantics-preserving mutations")]
struct Cli {
    /// Run directory holding the manifest and all artifacts.
    #[arg(long, global = true, default_value = ".")]
    run_dir: PathBuf,
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed fixing the variant corpus.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Per-session time budget in seconds [default: 90].
    #[arg(long, global = true)]
    budget_s: Option<f64>,
    /// Iteration cap for multi-turn models [default: 5].
    #[arg(long, global = true)]
    max_iterations: Option<u32>,
    /// Python 3 interpreter for the sandbox [default: python3].
    #[arg(long, global = true)]
    python_bin: Option<String>,
    /// OpenAI-compatible base URL.
    #[arg(long, global = true)]
    endpoint: Option<String>,
    /// Model name; repeat for several models.
    #[arg(long = "model", global = true)]
    models: Vec<String>,
    /// Treat the models given with --model as single-turn.
    #[arg(long, global = true)]
    single_turn: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a benchmark export and start a new manifest.
    Ingest {
        /// LiveCodeBench or CruxEval export, JSONL or JSON array.
        path: PathBuf,
    },
    /// Generate variants and run them through the semantic gate.
    Mutate {
        /// Generate only; leave every variant pending.
        #[arg(long)]
        no_verify: bool,
        /// Also require agreement with the parent on this many random inputs.
        #[arg(long, default_value_t = 0)]
        differential: usize,
        /// Per-test timeout in seconds.
        #[arg(long, default_value_t = DEFAULT_TIMEOUT.as_secs_f64())]
        test_timeout_s: f64,
    },
    /// Re-run the gate over the existing corpus.
    Verify {
        /// Re-check every variant, not only pending ones.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 0)]
        differential: usize,
        #[arg(long, default_value_t = DEFAULT_TIMEOUT.as_secs_f64())]
        test_timeout_s: f64,
    },
    /// Query each model on every verified subject.
    Evaluate {
        /// Skip sessions that already have a transcript.
        #[arg(long)]
        resume: bool,
        /// Attempts per request for transient endpoint failures.
        #[arg(long, default_value_t = 3)]
        retries: u32,
    },
    /// Compute rates and write report.json and report.txt.
    Report,
    /// Import a labels CSV with columns model,program_id,label,annotator.
    AnnotateImport { path: PathBuf },
}

fn settings(cli: &Cli) -> Result<Settings> {
    let c = &cli.common;
    let flags = Settings {
        seed: c.seed,
        budget_s: c.budget_s,
        max_iterations: c.max_iterations,
        python_bin: c.python_bin.clone(),
        endpoint: c.endpoint.clone(),
        jobs: c.jobs,
        models: c
            .models
            .iter()
            .map(|m| ModelEntry {
                name: m.clone(),
                endpoint: None,
                multi_turn: !c.single_turn,
            })
            .collect(),
    };
    Ok(Settings::resolve(flags, &cli.run_dir)?)
}

fn sandbox(s: &Settings, timeout_s: f64) -> Result<Sandbox> {
    if !(timeout_s.is_finite() && timeout_s > 0.0) {
        bail!("test timeout must be positive");
    }
    Ok(Sandbox::new(s.python_bin(), Duration::from_secs_f64(timeout_s))?)
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let s = settings(&cli)?;
    let run = RunDir::new(&cli.run_dir);
    match &cli.command {
        Command::Ingest { path } => {
            let seed = s.seed.context("ingest needs --seed (or `seed` in mutaprobe.toml)")?;
            let r = pipeline::ingest(&run, path, seed, s.budget()?.as_secs_f64())?;
            println!(
                "manifest {}: {} programs, {} excluded (see exclusions.jsonl)",
                r.manifest, r.programs, r.excluded
            );
        }
        Command::Mutate {
            no_verify,
            differential,
            test_timeout_s,
        } => {
            let manifest = run.load_manifest()?;
            if let Some(seed) = s.seed.filter(|x| *x != manifest.seed) {
                bail!("manifest {} was ingested with seed {}, not {seed}; re-run ingest", manifest.id, manifest.seed);
            }
            let sb = if *no_verify {
                None
            } else {
                Some(sandbox(&s, *test_timeout_s)?)
            };
            let opts = MutateOptions {
                jobs: s.jobs(),
                differential: *differential,
            };
            let g = pipeline::mutate(&run, sb.as_ref(), opts)?;
            println!(
                "{} variants: {} equivalent, {} rejected, {} pending; {} originals fail their own tests",
                g.variants, g.equivalent, g.rejected, g.pending, g.broken_originals
            );
        }
        Command::Verify {
            all,
            differential,
            test_timeout_s,
        } => {
            let opts = MutateOptions {
                jobs: s.jobs(),
                differential: *differential,
            };
            let g = pipeline::verify(&run, &sandbox(&s, *test_timeout_s)?, *all, opts)?;
            println!(
                "{} variants: {} equivalent, {} rejected, {} pending",
                g.variants, g.equivalent, g.rejected, g.pending
            );
        }
        Command::Evaluate { resume, retries } => {
            let profiles = s.profiles()?;
            if profiles.is_empty() {
                bail!("no models: pass --model and --endpoint or list [[models]] in mutaprobe.toml");
            }
            let judge = sandbox(&s, DEFAULT_TIMEOUT.as_secs_f64())?;
            let clock = Arc::new(SystemClock::default());
            let attempts = (*retries).max(1);
            let factory = move |p: &mutaprobe_core::harness::ModelProfile| {
                let ep = OpenAiEndpoint::new(&p.endpoint)?;
                let wrapped = Retrying::new(ep, attempts, Duration::from_secs(2), clock.clone());
                Ok(Arc::new(wrapped) as Arc<dyn ChatEndpoint>)
            };
            let opts = EvaluateOptions {
                budget: s.budget()?,
                jobs: s.jobs(),
                resume: *resume,
            };
            let r = pipeline::evaluate(&run, &profiles, &factory, &judge, &SystemClock::default(), opts)?;
            println!(
                "{} sessions run, {} skipped, {} endpoint errors",
                r.sessions, r.skipped, r.endpoint_errors
            );
        }
        Command::Report => {
            let r = pipeline::report(&run)?;
            print!("{}", r.to_text());
        }
        Command::AnnotateImport { path } => {
            let (n, warnings) = pipeline::annotate_import(&run, path)?;
            for w in &warnings {
                log::warn!("{w}");
            }
            println!("imported {n} labels into annotations.csv");
        }
    }
    Ok(())
}
