//! Outcome collection, reports and annotation import.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use super::corpus::VARIANTS;
use super::{io_err, PipelineError, RunDir};
use crate::harness::session::write_atomic;
use crate::harness::Session;
use crate::metrics::annotate::read_annotations;
use crate::metrics::{build_report, AnnotationRecord, MetricsReport, OutcomeMatrix, OutcomeRecord};
use crate::mutation::{Variant, Verification};

pub const ANNOTATIONS: &str = "annotations.csv";
pub const OUTCOMES: &str = "outcomes.jsonl";

/// Loads every finished transcript under `sessions/`, sorted by model and
/// subject. Transcripts from another manifest are skipped with a note.
pub fn load_sessions(run: &RunDir, manifest: &str, notes: &mut Vec<String>) -> Result<Vec<Session>, PipelineError> {
    let root = run.sessions_dir();
    let mut out = Vec::new();
    let Ok(models) = std::fs::read_dir(&root) else {
        return Ok(out);
    };
    for m in models {
        let dir = m.map_err(io_err(&root))?.path();
        if !dir.is_dir() {
            continue;
        }
        for f in std::fs::read_dir(&dir).map_err(io_err(&dir))? {
            let path = f.map_err(io_err(&dir))?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let bytes = std::fs::read(&path).map_err(io_err(&path))?;
            let s: Session = serde_json::from_slice(&bytes).map_err(|source| PipelineError::Json {
                path: path.clone(),
                line: 1,
                source,
            })?;
            if s.manifest.as_deref() != Some(manifest) {
                notes.push(format!("{} belongs to another manifest; skipped", path.display()));
                continue;
            }
            out.push(s);
        }
    }
    out.sort_by(|a, b| (&a.model, &a.subject).cmp(&(&b.model, &b.subject)));
    Ok(out)
}

/// Collects outcomes, writes `outcomes.jsonl`, `report.json` and
/// `report.txt`, and returns the report. Labels are included when
/// `annotations.csv` exists.
pub fn report(run: &RunDir) -> Result<MetricsReport, PipelineError> {
    let manifest = run.load_manifest()?;
    let mut notes = Vec::new();
    let sessions = load_sessions(run, &manifest.id, &mut notes)?;
    if sessions.is_empty() {
        notes.push("no finished sessions; run `evaluate` first".into());
    }
    let outcomes: Vec<OutcomeRecord> = sessions.iter().map(OutcomeRecord::from).collect();
    run.write_jsonl(OUTCOMES, &manifest.id, &outcomes)?;

    let equivalent: Option<HashSet<String>> = if run.path(VARIANTS).exists() {
        let vs: Vec<Variant> = run.read_jsonl(VARIANTS, &manifest.id)?;
        Some(
            vs.into_iter()
                .filter(|v| v.verified == Verification::Equivalent)
                .map(|v| v.id)
                .collect(),
        )
    } else {
        None
    };
    let matrix = OutcomeMatrix::from_records(&outcomes, equivalent.as_ref());
    let multi_turn: BTreeMap<String, bool> = manifest
        .models
        .iter()
        .map(|p| (p.name.clone(), p.supports_multi_turn))
        .collect();
    let labels_path = run.path(ANNOTATIONS);
    let labels = if labels_path.exists() {
        let f = std::fs::File::open(&labels_path).map_err(io_err(&labels_path))?;
        Some(read_annotations(f)?)
    } else {
        None
    };
    let mut r = build_report(&matrix, &multi_turn, labels.as_deref(), Some(manifest.id.clone()));
    notes.append(&mut r.notes);
    r.notes = notes;

    let mut json = serde_json::to_vec_pretty(&r).expect("report serializes");
    json.push(b'\n');
    let p = run.path("report.json");
    write_atomic(&p, &json).map_err(io_err(&p))?;
    let p = run.path("report.txt");
    write_atomic(&p, format!("manifest {}\n\n{}", manifest.id, r.to_text()).as_bytes()).map_err(io_err(&p))?;
    Ok(r)
}

/// Validates a labels CSV and stores it as `annotations.csv`. Returns the
/// number of rows and warnings for rows that match no correct session.
pub fn annotate_import(run: &RunDir, csv_path: &Path) -> Result<(usize, Vec<String>), PipelineError> {
    let manifest = run.load_manifest()?;
    let f = std::fs::File::open(csv_path).map_err(io_err(csv_path))?;
    let rows: Vec<AnnotationRecord> = read_annotations(f)?;
    let mut notes = Vec::new();
    let sessions = load_sessions(run, &manifest.id, &mut notes)?;
    let correct: HashSet<(&str, &str)> = sessions
        .iter()
        .filter(|s| s.class.is_none() && s.outcome.correct)
        .map(|s| (s.model.as_str(), s.subject.as_str()))
        .collect();
    let mut warnings = Vec::new();
    for r in &rows {
        if !correct.contains(&(r.model.as_str(), r.program_id.as_str())) {
            warnings.push(format!(
                "{} / {}: no correct session on the original program",
                r.model, r.program_id
            ));
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| PipelineError::State(e.to_string()))?;
    let p = run.path(ANNOTATIONS);
    write_atomic(&p, &bytes).map_err(io_err(&p))?;
    Ok((rows.len(), warnings))
}
