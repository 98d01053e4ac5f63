//! Run settings merged from flags, `mutaprobe.toml` and the environment.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::harness::{ModelProfile, DEFAULT_BUDGET, DEFAULT_MAX_ITERATIONS};

/// Config file looked up in the run directory.
pub const CONFIG_FILE: &str = "mutaprobe.toml";

/// A model entry in the config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelEntry {
    pub name: String,
    #[serde(default)]
    pub endpoint: Option<String>,
    #[serde(default = "yes")]
    pub multi_turn: bool,
}

fn yes() -> bool {
    true
}

/// Every setting is optional at each layer; [`Settings::merge`] fills gaps
/// from the lower-priority layer.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub seed: Option<u64>,
    pub budget_s: Option<f64>,
    pub max_iterations: Option<u32>,
    pub python_bin: Option<String>,
    pub endpoint: Option<String>,
    pub jobs: Option<usize>,
    #[serde(default)]
    pub models: Vec<ModelEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parsing {path}: {source}")]
    Toml {
        path: String,
        #[source]
        source: toml::de::Error,
    },
    #[error("environment variable {name}: {message}")]
    Env { name: String, message: String },
    #[error("model `{0}` has no endpoint; pass --endpoint or set one in the config")]
    NoEndpoint(String),
    #[error("{0}")]
    Invalid(String),
}

impl Settings {
    /// Reads `dir/mutaprobe.toml`, or returns empty settings when absent.
    pub fn from_dir(dir: &Path) -> Result<Self, ConfigError> {
        let path = dir.join(CONFIG_FILE);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Settings::default()),
            Err(source) => {
                return Err(ConfigError::Io {
                    path: path.display().to_string(),
                    source,
                })
            }
        };
        toml::from_str(&text).map_err(|source| ConfigError::Toml {
            path: path.display().to_string(),
            source,
        })
    }

    /// Reads `MUTAPROBE_*` variables through `get`.
    pub fn from_env_with(get: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        fn num<T: std::str::FromStr>(name: &str, v: Option<String>) -> Result<Option<T>, ConfigError>
        where
            T::Err: std::fmt::Display,
        {
            v.map(|s| {
                s.trim().parse().map_err(|e: T::Err| ConfigError::Env {
                    name: name.into(),
                    message: e.to_string(),
                })
            })
            .transpose()
        }
        let models = get("MUTAPROBE_MODEL")
            .map(|names| {
                names
                    .split(',')
                    .map(str::trim)
                    .filter(|n| !n.is_empty())
                    .map(|n| ModelEntry {
                        name: n.into(),
                        endpoint: None,
                        multi_turn: true,
                    })
                    .collect()
            })
            .unwrap_or_default();
        Ok(Settings {
            seed: num("MUTAPROBE_SEED", get("MUTAPROBE_SEED"))?,
            budget_s: num("MUTAPROBE_BUDGET_S", get("MUTAPROBE_BUDGET_S"))?,
            max_iterations: num("MUTAPROBE_MAX_ITERATIONS", get("MUTAPROBE_MAX_ITERATIONS"))?,
            python_bin: get(crate::verifier::PYTHON_ENV),
            endpoint: get("MUTAPROBE_ENDPOINT"),
            jobs: num("MUTAPROBE_JOBS", get("MUTAPROBE_JOBS"))?,
            models,
        })
    }

    pub fn from_env() -> Result<Self, ConfigError> {
        Settings::from_env_with(|k| std::env::var(k).ok())
    }

    /// `self` wins wherever it has a value.
    pub fn merge(self, lower: Settings) -> Settings {
        Settings {
            seed: self.seed.or(lower.seed),
            budget_s: self.budget_s.or(lower.budget_s),
            max_iterations: self.max_iterations.or(lower.max_iterations),
            python_bin: self.python_bin.or(lower.python_bin),
            endpoint: self.endpoint.or(lower.endpoint),
            jobs: self.jobs.or(lower.jobs),
            models: if self.models.is_empty() {
                lower.models
            } else {
                self.models
            },
        }
    }

    /// Flags over config file over environment.
    pub fn resolve(cli: Settings, dir: &Path) -> Result<Settings, ConfigError> {
        Ok(cli.merge(Settings::from_dir(dir)?).merge(Settings::from_env()?))
    }

    pub fn budget(&self) -> Result<std::time::Duration, ConfigError> {
        match self.budget_s {
            None => Ok(DEFAULT_BUDGET),
            Some(s) if s.is_finite() && s > 0.0 => Ok(std::time::Duration::from_secs_f64(s)),
            Some(s) => Err(ConfigError::Invalid(format!("budget must be positive, got {s}"))),
        }
    }

    pub fn jobs(&self) -> usize {
        self.jobs.filter(|j| *j > 0).unwrap_or(1)
    }

    pub fn python_bin(&self) -> &str {
        self.python_bin.as_deref().unwrap_or("python3")
    }

    /// Model profiles. Single-turn models always get one iteration; others
    /// get `max_iterations` (default 5).
    pub fn profiles(&self) -> Result<Vec<ModelProfile>, ConfigError> {
        self.models
            .iter()
            .map(|m| {
                let endpoint = m
                    .endpoint
                    .clone()
                    .or_else(|| self.endpoint.clone())
                    .ok_or_else(|| ConfigError::NoEndpoint(m.name.clone()))?;
                let mut p = if m.multi_turn {
                    ModelProfile::multi_turn(&m.name, &endpoint)
                } else {
                    ModelProfile::single_turn(&m.name, &endpoint)
                };
                if m.multi_turn {
                    p.max_iterations = self.max_iterations.unwrap_or(DEFAULT_MAX_ITERATIONS);
                }
                p.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
                Ok(p)
            })
            .collect()
    }
}
