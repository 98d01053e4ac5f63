//! Iterative output-prediction sessions against chat models.
//!
//! A session shows the model a program and an incomplete assertion, extracts
//! the predicted value, judges it, and for multi-turn models repeats with a
//! generic feedback prompt until the answer is right, the iteration cap is
//! hit, or the time budget runs out.

pub mod endpoint;
pub mod extract;
pub mod prompt;
pub mod session;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::mutation::{MutationClass, Variant};
use crate::program::Program;
use crate::verifier::Sandbox;

pub use endpoint::{ChatEndpoint, ChatMessage, Clock, EndpointError, SystemClock, VirtualClock};
pub use extract::{extract_answer, Malformed};
pub use session::{run_session, SessionOptions};

/// Session time budget unless configured otherwise.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(90);
/// Iteration cap for multi-turn models.
pub const DEFAULT_MAX_ITERATIONS: u32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
    #[error("invalid model profile: {0}")]
    InvalidProfile(String),
    #[error("transcript i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// How one model is queried.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelProfile {
    pub name: String,
    pub endpoint: String,
    pub supports_multi_turn: bool,
    pub max_iterations: u32,
    pub temperature: f64,
}

impl ModelProfile {
    pub fn multi_turn(name: &str, endpoint: &str) -> Self {
        ModelProfile {
            name: name.into(),
            endpoint: endpoint.into(),
            supports_multi_turn: true,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            temperature: 0.0,
        }
    }

    /// A model that gets exactly one query per subject.
    pub fn single_turn(name: &str, endpoint: &str) -> Self {
        ModelProfile {
            supports_multi_turn: false,
            max_iterations: 1,
            ..ModelProfile::multi_turn(name, endpoint)
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.temperature != 0.0 {
            return Err(HarnessError::InvalidProfile(format!(
                "{}: temperature must be 0",
                self.name
            )));
        }
        if self.max_iterations == 0 || (!self.supports_multi_turn && self.max_iterations != 1) {
            return Err(HarnessError::InvalidProfile(format!(
                "{}: single-turn models take exactly one iteration",
                self.name
            )));
        }
        Ok(())
    }
}

/// The feedback prompt, which only multi-turn models may receive.
pub fn feedback_prompt(profile: &ModelProfile) -> Result<&'static str, HarnessError> {
    if profile.supports_multi_turn {
        Ok(prompt::FEEDBACK_PROMPT)
    } else {
        Err(HarnessError::ProtocolViolation(format!(
            "{} is single-turn and cannot receive feedback",
            profile.name
        )))
    }
}

/// What a session asks about: one program or variant and its designated test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub id: String,
    pub parent_id: String,
    pub class: Option<MutationClass>,
    pub source: String,
    pub entry: String,
    pub input: String,
    pub expected: String,
}

impl Subject {
    pub fn original(p: &Program) -> Option<Self> {
        let t = p.designated_test()?;
        Some(Subject {
            id: p.id.clone(),
            parent_id: p.id.clone(),
            class: None,
            source: p.source.clone(),
            entry: p.entry_point.clone(),
            input: t.input_expr.clone(),
            expected: t.expected_output.clone(),
        })
    }

    pub fn variant(v: &Variant, parent: &Program) -> Option<Self> {
        let t = parent.designated_test()?;
        Some(Subject {
            id: v.id.clone(),
            parent_id: parent.id.clone(),
            class: Some(v.class),
            source: v.source.clone(),
            entry: parent.entry_point.clone(),
            input: t.input_expr.clone(),
            expected: t.expected_output.clone(),
        })
    }

    pub fn initial_prompt(&self) -> String {
        prompt::initial_prompt(&self.source, &self.entry, &self.input)
    }
}

/// Decides whether a predicted literal equals the expected output.
pub trait Decider: Sync {
    fn judge(&self, predicted: &str, expected: &str) -> bool;
}

impl Decider for Sandbox {
    fn judge(&self, predicted: &str, expected: &str) -> bool {
        self.compare(predicted, expected).unwrap_or_else(|e| {
            log::error!("judge sandbox failed: {e}");
            false
        })
    }
}

impl<F: Fn(&str, &str) -> bool + Sync> Decider for F {
    fn judge(&self, predicted: &str, expected: &str) -> bool {
        self(predicted, expected)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Correct,
    IterationCap,
    TimeCap,
    MalformedAll,
    /// The endpoint kept failing; the session is excluded from rates.
    EndpointError,
}

/// One request and its reply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PromptExchange {
    pub role: String,
    pub request: String,
    pub response: String,
    pub latency_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt_tokens: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion_tokens: Option<u64>,
    pub predicted: Option<String>,
    pub correct: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub malformed: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionOutcome {
    pub predicted_literal: Option<String>,
    pub correct: bool,
    pub iterations_used: u32,
    pub termination: Termination,
}

/// Full record of one (model, subject) interaction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Session {
    pub subject: String,
    pub parent_id: String,
    pub class: Option<MutationClass>,
    pub model: String,
    pub exchanges: Vec<PromptExchange>,
    pub outcome: PredictionOutcome,
    pub budget_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_invariants() {
        assert!(ModelProfile::multi_turn("a", "u").validate().is_ok());
        assert!(ModelProfile::single_turn("a", "u").validate().is_ok());
        let mut p = ModelProfile::single_turn("a", "u");
        p.max_iterations = 5;
        assert!(p.validate().is_err());
        let mut p = ModelProfile::multi_turn("a", "u");
        p.temperature = 0.7;
        assert!(p.validate().is_err());
    }

    #[test]
    fn feedback_is_refused_for_single_turn_models() {
        assert!(matches!(
            feedback_prompt(&ModelProfile::single_turn("semcoder", "u")),
            Err(HarnessError::ProtocolViolation(_))
        ));
        let p = ModelProfile::multi_turn("qwen", "u");
        assert_eq!(feedback_prompt(&p).unwrap(), feedback_prompt(&p).unwrap());
        assert!(feedback_prompt(&p)
            .unwrap()
            .starts_with("Your previous output prediction was INCORRECT!"));
    }
}
