//! Ingest, variant generation and the semantic gate.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{io_err, PipelineError, RunDir, RunManifest};
use crate::mutation::{generate_variants, MutationClass, Variant, Verification};
use crate::program::ingest::{ingest_text, Exclusion};
use crate::program::Program;
use crate::verifier::fuzz::{differential, fuzz_inputs};
use crate::verifier::{ExecStatus, Sandbox};

pub const BENCHMARK: &str = "benchmark.jsonl";
pub const EXCLUSIONS: &str = "exclusions.jsonl";
pub const VARIANTS: &str = "variants.jsonl";
pub const VERIFICATION: &str = "verification.jsonl";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestSummary {
    pub manifest: String,
    pub programs: usize,
    pub excluded: usize,
}

/// Normalizes a benchmark export into the run directory and writes a fresh
/// manifest for `seed`.
pub fn ingest(run: &RunDir, input: &Path, seed: u64, budget_s: f64) -> Result<IngestSummary, PipelineError> {
    let bytes = std::fs::read(input).map_err(io_err(input))?;
    let text = String::from_utf8_lossy(&bytes);
    let out = ingest_text(&text)?;
    let manifest = RunManifest::new(&input.display().to_string(), &bytes, seed, budget_s);
    std::fs::create_dir_all(run.root()).map_err(io_err(run.root()))?;
    run.write_jsonl(BENCHMARK, &manifest.id, &out.programs)?;
    run.write_jsonl(EXCLUSIONS, &manifest.id, &out.excluded)?;
    run.save_manifest(&manifest)?;
    for e in &out.excluded {
        log::info!("excluded {}: {}", e.id, e.reason);
    }
    Ok(IngestSummary {
        manifest: manifest.id,
        programs: out.programs.len(),
        excluded: out.excluded.len(),
    })
}

/// Gate verdict for one original or variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub subject: String,
    pub parent_id: String,
    pub class: Option<MutationClass>,
    pub status: ExecStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub wall_time: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MutateOptions {
    /// Worker threads for verification.
    pub jobs: usize,
    /// Seeded random inputs on which each passing variant must also agree
    /// with its parent; 0 disables the check.
    pub differential: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateSummary {
    pub variants: usize,
    pub equivalent: usize,
    pub rejected: usize,
    pub pending: usize,
    /// Originals that fail their own tests; their variants are rejected.
    pub broken_originals: usize,
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

fn summarize(variants: &[Variant], broken_originals: usize) -> GateSummary {
    let count = |v: Verification| variants.iter().filter(|x| x.verified == v).count();
    GateSummary {
        variants: variants.len(),
        equivalent: count(Verification::Equivalent),
        rejected: count(Verification::Rejected),
        pending: count(Verification::Pending),
        broken_originals,
    }
}

/// Runs one variant through the gate: all parent tests must pass, then the
/// optional differential check must find no disagreement.
pub fn gate_variant(
    sandbox: &Sandbox,
    parent: &Program,
    variant: &Variant,
    differential_inputs: &[String],
) -> Result<VerificationRecord, PipelineError> {
    let r = sandbox.verify(&variant.source, &parent.entry_point, &parent.tests)?;
    let mut rec = VerificationRecord {
        subject: variant.id.clone(),
        parent_id: parent.id.clone(),
        class: Some(variant.class),
        status: r.status,
        reason: (r.status != ExecStatus::Passed).then(|| r.stderr.clone()).filter(|s| !s.is_empty()),
        wall_time: r.wall_time,
    };
    if r.status == ExecStatus::Passed && !differential_inputs.is_empty() {
        let d = differential(sandbox, parent, &variant.source, differential_inputs)?;
        if let Some(first) = d.disagreements.first() {
            rec.status = ExecStatus::Failed;
            rec.reason = Some(format!(
                "{} of {} random inputs disagree, first: {}",
                d.disagreements.len(),
                d.inputs,
                first.input
            ));
        }
    }
    Ok(rec)
}

/// Verifies originals and every variant whose status is in `which`, in place.
fn run_gate(
    programs: &[Program],
    variants: &mut [Variant],
    which: &[Verification],
    sandbox: &Sandbox,
    seed: u64,
    opts: MutateOptions,
) -> Result<(Vec<VerificationRecord>, usize), PipelineError> {
    let by_id: HashMap<&str, &Program> = programs.iter().map(|p| (p.id.as_str(), p)).collect();
    let pool = pool(opts.jobs);
    let originals: Vec<VerificationRecord> = pool.install(|| {
        programs
            .par_iter()
            .map(|p| {
                let r = sandbox.verify(&p.source, &p.entry_point, &p.tests)?;
                Ok(VerificationRecord {
                    subject: p.id.clone(),
                    parent_id: p.id.clone(),
                    class: None,
                    status: r.status,
                    reason: (r.status != ExecStatus::Passed).then(|| r.stderr.clone()).filter(|s| !s.is_empty()),
                    wall_time: r.wall_time,
                })
            })
            .collect::<Result<_, PipelineError>>()
    })?;
    let broken: HashMap<&str, &VerificationRecord> = originals
        .iter()
        .filter(|r| r.status != ExecStatus::Passed)
        .map(|r| (r.subject.as_str(), r))
        .collect();
    for b in broken.values() {
        log::warn!("{} fails its own tests ({:?}); its variants are rejected", b.subject, b.status);
    }
    let inputs: HashMap<&str, Vec<String>> = if opts.differential > 0 {
        programs
            .iter()
            .map(|p| (p.id.as_str(), fuzz_inputs(p, opts.differential, seed)))
            .collect()
    } else {
        HashMap::new()
    };
    let checked: Vec<Option<VerificationRecord>> = pool.install(|| {
        variants
            .par_iter()
            .map(|v| {
                if !which.contains(&v.verified) {
                    return Ok(None);
                }
                let parent = by_id.get(v.parent_id.as_str()).ok_or_else(|| {
                    PipelineError::State(format!("variant {} has unknown parent {}", v.id, v.parent_id))
                })?;
                if broken.contains_key(parent.id.as_str()) {
                    return Ok(Some(VerificationRecord {
                        subject: v.id.clone(),
                        parent_id: parent.id.clone(),
                        class: Some(v.class),
                        status: ExecStatus::Failed,
                        reason: Some("parent fails its own tests".into()),
                        wall_time: 0.0,
                    }));
                }
                let empty = Vec::new();
                let fuzz = inputs.get(parent.id.as_str()).unwrap_or(&empty);
                gate_variant(sandbox, parent, v, fuzz).map(Some)
            })
            .collect::<Result<_, PipelineError>>()
    })?;
    let broken_count = broken.len();
    let mut records = originals;
    for (v, rec) in variants.iter_mut().zip(checked) {
        if let Some(rec) = rec {
            v.verified = if rec.status == ExecStatus::Passed {
                Verification::Equivalent
            } else {
                Verification::Rejected
            };
            records.push(rec);
        }
    }
    Ok((records, broken_count))
}

/// Generates variants for every ingested program and, when a sandbox is
/// given, verifies them. Rejected variants stay in the corpus.
pub fn mutate(run: &RunDir, sandbox: Option<&Sandbox>, opts: MutateOptions) -> Result<GateSummary, PipelineError> {
    let manifest = run.load_manifest()?;
    let programs: Vec<Program> = run.read_jsonl(BENCHMARK, &manifest.id)?;
    let mut variants = Vec::new();
    for p in &programs {
        match generate_variants(p, manifest.seed) {
            Ok(vs) => variants.extend(vs),
            Err(e) => log::warn!("{}: {e}", p.id),
        }
    }
    let mut broken = 0;
    if let Some(sb) = sandbox {
        let (records, b) = run_gate(&programs, &mut variants, &[Verification::Pending], sb, manifest.seed, opts)?;
        run.write_jsonl(VERIFICATION, &manifest.id, &records)?;
        broken = b;
    }
    run.write_jsonl(VARIANTS, &manifest.id, &variants)?;
    Ok(summarize(&variants, broken))
}

/// Re-runs the gate over an existing corpus: pending variants only, or all
/// of them when `all` is set.
pub fn verify(run: &RunDir, sandbox: &Sandbox, all: bool, opts: MutateOptions) -> Result<GateSummary, PipelineError> {
    let manifest = run.load_manifest()?;
    let programs: Vec<Program> = run.read_jsonl(BENCHMARK, &manifest.id)?;
    let mut variants: Vec<Variant> = run.read_jsonl(VARIANTS, &manifest.id)?;
    let which: &[Verification] = if all {
        &[Verification::Pending, Verification::Equivalent, Verification::Rejected]
    } else {
        &[Verification::Pending]
    };
    let (mut records, broken) = run_gate(&programs, &mut variants, which, sandbox, manifest.seed, opts)?;
    if run.path(VERIFICATION).exists() {
        let fresh: HashSet<String> = records.iter().map(|r| r.subject.clone()).collect();
        let old: Vec<VerificationRecord> = run.read_jsonl(VERIFICATION, &manifest.id)?;
        let kept: Vec<_> = old.into_iter().filter(|r| !fresh.contains(&r.subject)).collect();
        records.splice(0..0, kept);
    }
    run.write_jsonl(VERIFICATION, &manifest.id, &records)?;
    run.write_jsonl(VARIANTS, &manifest.id, &variants)?;
    Ok(summarize(&variants, broken))
}

/// Ingest exclusions, for reporting.
pub fn exclusions(run: &RunDir) -> Result<Vec<Exclusion>, PipelineError> {
    let manifest = run.load_manifest()?;
    run.read_jsonl(EXCLUSIONS, &manifest.id)
}
