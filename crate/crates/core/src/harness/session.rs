//! The ask, judge, feed back loop.

use std::path::{Path, PathBuf};
use std::time::Duration;

use super::endpoint::{ChatEndpoint, ChatMessage, Clock};
use super::{
    extract_answer, feedback_prompt, Decider, HarnessError, ModelProfile, PredictionOutcome,
    PromptExchange, Session, Subject, Termination, DEFAULT_BUDGET,
};

#[derive(Debug, Clone)]
pub struct SessionOptions {
    pub budget: Duration,
    pub manifest: Option<String>,
    /// Final transcript path; a `.partial` sibling is kept up to date while
    /// the session runs.
    pub transcript: Option<PathBuf>,
}

impl Default for SessionOptions {
    fn default() -> Self {
        SessionOptions {
            budget: DEFAULT_BUDGET,
            manifest: None,
            transcript: None,
        }
    }
}

/// Writes `bytes` to `path` via a temporary file and rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

pub fn partial_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".partial");
    PathBuf::from(s)
}

fn persist(session: &Session, path: &Path) -> Result<(), HarnessError> {
    let json = serde_json::to_vec_pretty(session).expect("session serializes");
    write_atomic(path, &json)?;
    Ok(())
}

/// Runs one session. Requests stop once the budget is spent; a reply that
/// arrives after the budget is recorded but not credited.
pub fn run_session(
    subject: &Subject,
    profile: &ModelProfile,
    endpoint: &dyn ChatEndpoint,
    judge: &dyn Decider,
    clock: &dyn Clock,
    opts: &SessionOptions,
) -> Result<Session, HarnessError> {
    profile.validate()?;
    let mut session = Session {
        subject: subject.id.clone(),
        parent_id: subject.parent_id.clone(),
        class: subject.class,
        model: profile.name.clone(),
        exchanges: Vec::new(),
        outcome: PredictionOutcome {
            predicted_literal: None,
            correct: false,
            iterations_used: 0,
            termination: Termination::IterationCap,
        },
        budget_s: opts.budget.as_secs_f64(),
        error: None,
        manifest: opts.manifest.clone(),
    };
    let partial = opts.transcript.as_deref().map(partial_path);
    let start = clock.now();
    let mut messages = vec![ChatMessage::user(subject.initial_prompt())];
    let mut termination = None;
    let mut any_wellformed = false;

    for iteration in 1..=profile.max_iterations {
        let elapsed = clock.now().saturating_sub(start);
        if elapsed >= opts.budget {
            termination = Some(Termination::TimeCap);
            break;
        }
        let sent = clock.now();
        let reply = match endpoint.complete(profile, &messages, opts.budget - elapsed) {
            Ok(r) => r,
            Err(e) => {
                log::warn!("{} / {}: {e}", profile.name, subject.id);
                session.error = Some(e.to_string());
                termination = Some(Termination::EndpointError);
                break;
            }
        };
        let now = clock.now();
        let late = now.saturating_sub(start) > opts.budget;
        let (predicted, malformed) = match extract_answer(&reply.content) {
            Ok(p) => (Some(p), None),
            Err(m) => (None, Some(m.to_string())),
        };
        any_wellformed |= predicted.is_some();
        let correct = !late && predicted.as_deref().is_some_and(|p| judge.judge(p, &subject.expected));
        session.exchanges.push(PromptExchange {
            role: "user".into(),
            request: messages.last().expect("non-empty").content.clone(),
            response: reply.content.clone(),
            latency_s: now.saturating_sub(sent).as_secs_f64(),
            prompt_tokens: reply.prompt_tokens,
            completion_tokens: reply.completion_tokens,
            predicted: predicted.clone(),
            correct,
            malformed,
        });
        session.outcome.iterations_used = iteration;
        if predicted.is_some() {
            session.outcome.predicted_literal = predicted;
        }
        if let Some(p) = &partial {
            persist(&session, p)?;
        }
        if late {
            termination = Some(Termination::TimeCap);
            break;
        }
        if correct {
            termination = Some(Termination::Correct);
            break;
        }
        if iteration < profile.max_iterations {
            messages.push(ChatMessage::assistant(reply.content));
            messages.push(ChatMessage::user(feedback_prompt(profile)?));
        }
    }

    session.outcome.termination = termination.unwrap_or(if any_wellformed {
        Termination::IterationCap
    } else {
        Termination::MalformedAll
    });
    session.outcome.correct = session.outcome.termination == Termination::Correct;
    if let Some(path) = &opts.transcript {
        persist(&session, path)?;
        if let Some(p) = &partial {
            let _ = std::fs::remove_file(p);
        }
    }
    Ok(session)
}
