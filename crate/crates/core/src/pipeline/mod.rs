//! End-to-end stages over a run directory.
//!
//! Layout of a run directory:
//!
//! ```text
//! mutaprobe.toml          optional settings
//! manifest.json           RunManifest
//! benchmark.jsonl         ingested programs
//! exclusions.jsonl        programs dropped at ingest
//! variants.jsonl          variant corpus, rejected variants included
//! verification.jsonl      gate verdicts for originals and variants
//! sessions/<model>/<subject>.json
//! annotations.csv         imported labels
//! outcomes.jsonl          per-session outcomes used by the report
//! report.json, report.txt
//! ```
//!
//! Every JSONL record carries a `manifest` field with the manifest id.

pub mod config;
pub mod corpus;
pub mod evaluate;
pub mod manifest;
pub mod report;

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::harness::session::write_atomic;

pub use config::{ConfigError, Settings};
pub use corpus::{ingest, mutate, verify, MutateOptions};
pub use evaluate::{evaluate, EvaluateOptions, EvaluateSummary};
pub use manifest::RunManifest;
pub use report::{annotate_import, report};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Json {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Ingest(#[from] crate::program::ingest::IngestError),
    #[error(transparent)]
    Verifier(#[from] crate::verifier::VerifierError),
    #[error(transparent)]
    Harness(#[from] crate::harness::HarnessError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("annotations: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    State(String),
}

/// A record tagged with the manifest it belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stamped<T> {
    pub manifest: String,
    #[serde(flatten)]
    pub record: T,
}

/// Paths inside a run directory.
#[derive(Debug, Clone)]
pub struct RunDir {
    root: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Keeps `[A-Za-z0-9._-]` and percent-encodes every other byte, so ids map
/// to distinct, portable file names.
pub fn file_stem(id: &str) -> String {
    let mut out = String::with_capacity(id.len());
    for b in id.bytes() {
        if b.is_ascii_alphanumeric() || matches!(b, b'.' | b'_' | b'-') {
            out.push(b as char);
        } else {
            out.push_str(&format!("%{b:02X}"));
        }
    }
    if out.starts_with('.') {
        out.replace_range(0..1, "%2E");
    }
    out
}

impl RunDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        RunDir { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.path("manifest.json")
    }

    pub fn sessions_dir(&self) -> PathBuf {
        self.path("sessions")
    }

    pub fn session_path(&self, model: &str, subject: &str) -> PathBuf {
        self.sessions_dir()
            .join(file_stem(model))
            .join(format!("{}.json", file_stem(subject)))
    }

    pub fn load_manifest(&self) -> Result<RunManifest, PipelineError> {
        let path = self.manifest_path();
        let bytes = std::fs::read(&path).map_err(|e| {
            if e.kind() == std::io::ErrorKind::NotFound {
                PipelineError::State(format!("{} not found; run `ingest` first", path.display()))
            } else {
                io_err(&path)(e)
            }
        })?;
        serde_json::from_slice(&bytes).map_err(|source| PipelineError::Json { path, line: 1, source })
    }

    pub fn save_manifest(&self, m: &RunManifest) -> Result<(), PipelineError> {
        let path = self.manifest_path();
        let mut bytes = serde_json::to_vec_pretty(m).expect("manifest serializes");
        bytes.push(b'\n');
        write_atomic(&path, &bytes).map_err(io_err(&path))
    }

    /// Reads `name` as stamped JSONL, checking every stamp against `manifest`.
    pub fn read_jsonl<T: DeserializeOwned>(&self, name: &str, manifest: &str) -> Result<Vec<T>, PipelineError> {
        let path = self.path(name);
        let text = std::fs::read_to_string(&path).map_err(io_err(&path))?;
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let s: Stamped<T> = serde_json::from_str(line).map_err(|source| PipelineError::Json {
                path: path.clone(),
                line: i + 1,
                source,
            })?;
            if s.manifest != manifest {
                return Err(PipelineError::State(format!(
                    "{}:{}: record belongs to manifest {}, not {manifest}",
                    path.display(),
                    i + 1,
                    s.manifest
                )));
            }
            out.push(s.record);
        }
        Ok(out)
    }

    /// Writes records as stamped JSONL, replacing the file atomically.
    pub fn write_jsonl<T: Serialize>(&self, name: &str, manifest: &str, records: &[T]) -> Result<(), PipelineError> {
        let mut buf = Vec::new();
        for r in records {
            let s = Stamped {
                manifest: manifest.to_string(),
                record: r,
            };
            serde_json::to_writer(&mut buf, &s).expect("record serializes");
            buf.push(b'\n');
        }
        let path = self.path(name);
        write_atomic(&path, &buf).map_err(io_err(&path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_stems_are_distinct_and_safe() {
        assert_eq!(file_stem("2747::rename_variable::0"), "2747%3A%3Arename_variable%3A%3A0");
        assert_eq!(file_stem("a/b"), "a%2Fb");
        assert_eq!(file_stem(".."), "%2E.");
        assert_ne!(file_stem("a_b"), file_stem("a/b"));
    }

    #[test]
    fn stamped_jsonl_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let run = RunDir::new(dir.path());
        let rows = vec![serde_json::json!({"a": 1}), serde_json::json!({"a": 2})];
        run.write_jsonl("x.jsonl", "m1", &rows).unwrap();
        let text = std::fs::read_to_string(run.path("x.jsonl")).unwrap();
        assert!(text.starts_with("{\"manifest\":\"m1\",\"a\":1}"));
        let back: Vec<serde_json::Value> = run.read_jsonl("x.jsonl", "m1").unwrap();
        assert_eq!(back, rows);
        assert!(run.read_jsonl::<serde_json::Value>("x.jsonl", "m2").is_err());
    }
}
