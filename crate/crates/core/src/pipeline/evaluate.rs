//! Resumable evaluation of every verified subject against every model.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;

use super::corpus::{VerificationRecord, BENCHMARK, VARIANTS, VERIFICATION};
use super::{PipelineError, RunDir};
use crate::harness::endpoint::{ChatEndpoint, Clock, EndpointError};
use crate::harness::{run_session, Decider, ModelProfile, Session, SessionOptions, Subject, Termination};
use crate::mutation::{Variant, Verification};
use crate::program::Program;
use crate::verifier::ExecStatus;

#[derive(Debug, Clone, Copy)]
pub struct EvaluateOptions {
    pub budget: Duration,
    pub jobs: usize,
    /// Skip sessions whose transcript already exists. Without it an
    /// existing transcript is an error.
    pub resume: bool,
}

impl Default for EvaluateOptions {
    fn default() -> Self {
        EvaluateOptions {
            budget: crate::harness::DEFAULT_BUDGET,
            jobs: 1,
            resume: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvaluateSummary {
    pub sessions: usize,
    pub skipped: usize,
    pub endpoint_errors: usize,
}

/// Builds the endpoint for a model profile.
pub type EndpointFactory<'a> = dyn Fn(&ModelProfile) -> Result<Arc<dyn ChatEndpoint>, EndpointError> + Sync + 'a;

/// Originals that passed their own tests, then their equivalent variants.
pub fn subjects(run: &RunDir) -> Result<Vec<Subject>, PipelineError> {
    let manifest = run.load_manifest()?;
    let programs: Vec<Program> = run.read_jsonl(BENCHMARK, &manifest.id)?;
    if !run.path(VERIFICATION).exists() || !run.path(VARIANTS).exists() {
        return Err(PipelineError::State(
            "no verified corpus; run `mutate` with a Python interpreter first".into(),
        ));
    }
    let records: Vec<VerificationRecord> = run.read_jsonl(VERIFICATION, &manifest.id)?;
    let passed: HashSet<&str> = records
        .iter()
        .filter(|r| r.class.is_none() && r.status == ExecStatus::Passed)
        .map(|r| r.subject.as_str())
        .collect();
    let variants: Vec<Variant> = run.read_jsonl(VARIANTS, &manifest.id)?;
    let mut out = Vec::new();
    for p in programs.iter().filter(|p| passed.contains(p.id.as_str())) {
        out.extend(Subject::original(p));
    }
    for v in variants.iter().filter(|v| v.verified == Verification::Equivalent) {
        if let Some(p) = programs.iter().find(|p| p.id == v.parent_id && passed.contains(p.id.as_str())) {
            out.extend(Subject::variant(v, p));
        }
    }
    Ok(out)
}

fn completed(path: &std::path::Path) -> bool {
    std::fs::read(path)
        .ok()
        .and_then(|b| serde_json::from_slice::<Session>(&b).ok())
        .is_some()
}

/// Runs one session per (model, subject), writing
/// `sessions/<model>/<subject>.json`. Existing transcripts are skipped when
/// resuming.
pub fn evaluate(
    run: &RunDir,
    profiles: &[ModelProfile],
    endpoint_for: &EndpointFactory<'_>,
    judge: &dyn Decider,
    clock: &dyn Clock,
    opts: EvaluateOptions,
) -> Result<EvaluateSummary, PipelineError> {
    if profiles.is_empty() {
        return Err(PipelineError::State("no models configured".into()));
    }
    for p in profiles {
        p.validate()?;
    }
    let mut manifest = run.load_manifest()?;
    let subjects = subjects(run)?;
    manifest.record_models(profiles);
    manifest.budget_s = opts.budget.as_secs_f64();
    run.save_manifest(&manifest)?;

    let mut jobs = Vec::new();
    let mut skipped = 0;
    for p in profiles {
        let endpoint = endpoint_for(p).map_err(|e| PipelineError::State(format!("{}: {e}", p.name)))?;
        for s in &subjects {
            let path = run.session_path(&p.name, &s.id);
            if completed(&path) {
                if !opts.resume {
                    return Err(PipelineError::State(format!(
                        "{} exists; pass --resume to continue an interrupted run",
                        path.display()
                    )));
                }
                skipped += 1;
                continue;
            }
            jobs.push((p, endpoint.clone(), s, path));
        }
    }

    let done = AtomicUsize::new(0);
    let errors = AtomicUsize::new(0);
    let total = jobs.len();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        jobs.par_iter().try_for_each(|(profile, endpoint, subject, path)| {
            let session_opts = SessionOptions {
                budget: opts.budget,
                manifest: Some(manifest.id.clone()),
                transcript: Some(path.clone()),
            };
            let s = run_session(subject, profile, endpoint.as_ref(), judge, clock, &session_opts)?;
            if s.outcome.termination == Termination::EndpointError {
                errors.fetch_add(1, Ordering::Relaxed);
            }
            let n = done.fetch_add(1, Ordering::Relaxed) + 1;
            log::info!(
                "[{n}/{total}] {} {}: {:?} after {}",
                profile.name,
                subject.id,
                s.outcome.termination,
                s.outcome.iterations_used
            );
            Ok::<_, PipelineError>(())
        })
    })?;
    Ok(EvaluateSummary {
        sessions: done.into_inner(),
        skipped,
        endpoint_errors: errors.into_inner(),
    })
}
