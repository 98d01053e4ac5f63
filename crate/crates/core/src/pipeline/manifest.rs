//! The run manifest that every artifact points back to.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::harness::ModelProfile;

/// Where the benchmark came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkRef {
    pub path: String,
    /// Hex SHA-256 of the file as read.
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub id: String,
    pub seed: u64,
    pub benchmark: BenchmarkRef,
    #[serde(default)]
    pub models: Vec<ModelProfile>,
    pub budget_s: f64,
    pub created: DateTime<Utc>,
    pub updated: DateTime<Utc>,
    pub tool_version: String,
}

/// First 16 hex digits of SHA-256 over the benchmark hash and the seed.
pub fn manifest_id(benchmark_sha256: &str, seed: u64) -> String {
    let mut h = Sha256::new();
    h.update(benchmark_sha256.as_bytes());
    h.update(seed.to_string().as_bytes());
    hex::encode(h.finalize())[..16].to_string()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(path: &str, contents: &[u8], seed: u64, budget_s: f64) -> Self {
        let sha256 = sha256_hex(contents);
        let now = Utc::now();
        RunManifest {
            id: manifest_id(&sha256, seed),
            seed,
            benchmark: BenchmarkRef {
                path: path.into(),
                sha256,
            },
            models: Vec::new(),
            budget_s,
            created: now,
            updated: now,
            tool_version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    /// Records the profiles used by an evaluation, replacing same-named ones.
    pub fn record_models(&mut self, profiles: &[ModelProfile]) {
        for p in profiles {
            self.models.retain(|m| m.name != p.name);
            self.models.push(p.clone());
        }
        self.models.sort_by(|a, b| a.name.cmp(&b.name));
        self.updated = Utc::now();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_depends_on_content_and_seed_only() {
        let a = RunManifest::new("a.jsonl", b"x", 7, 90.0);
        let b = RunManifest::new("elsewhere/b.jsonl", b"x", 7, 30.0);
        let c = RunManifest::new("a.jsonl", b"x", 8, 90.0);
        assert_eq!(a.id, b.id);
        assert_ne!(a.id, c.id);
        assert_eq!(a.id.len(), 16);
        assert_eq!(a.id, manifest_id(&sha256_hex(b"x"), 7));
    }
}
