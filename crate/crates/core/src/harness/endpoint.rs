//! Chat endpoints: an OpenAI-compatible HTTP client, retry and rate-limit
//! wrappers, and a scripted mock.

use std::collections::VecDeque;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::ModelProfile;

/// Completion cap sent with every request.
pub const MAX_TOKENS: u32 = 1024;

/// Environment variable holding the bearer token, if the endpoint needs one.
pub const API_KEY_ENV: &str = "MUTAPROBE_API_KEY";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

impl ChatMessage {
    pub fn user(content: impl Into<String>) -> Self {
        ChatMessage {
            role: "user".into(),
            content: content.into(),
        }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        ChatMessage {
            role: "assistant".into(),
            content: content.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChatReply {
    pub content: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt_tokens: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion_tokens: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EndpointError {
    #[error("request failed: {0}")]
    Transport(String),
    #[error("endpoint returned HTTP {status}: {body}")]
    Status { status: u16, body: String },
    #[error("unexpected response: {0}")]
    Protocol(String),
}

impl EndpointError {
    /// Worth retrying: transport failures, rate limiting and server errors.
    pub fn is_transient(&self) -> bool {
        match self {
            EndpointError::Transport(_) => true,
            EndpointError::Status { status, .. } => *status == 429 || *status >= 500,
            EndpointError::Protocol(_) => false,
        }
    }
}

/// Source of elapsed time for session budgets.
pub trait Clock: Send + Sync {
    fn now(&self) -> Duration;
    fn sleep(&self, d: Duration);
}

/// Wall-clock time since construction.
#[derive(Debug, Clone)]
pub struct SystemClock(Instant);

impl Default for SystemClock {
    fn default() -> Self {
        SystemClock(Instant::now())
    }
}

impl Clock for SystemClock {
    fn now(&self) -> Duration {
        self.0.elapsed()
    }

    fn sleep(&self, d: Duration) {
        std::thread::sleep(d);
    }
}

/// Manually advanced time for tests.
#[derive(Debug, Clone, Default)]
pub struct VirtualClock(Arc<Mutex<Duration>>);

impl VirtualClock {
    pub fn advance(&self, d: Duration) {
        *self.0.lock().expect("clock lock") += d;
    }
}

impl Clock for VirtualClock {
    fn now(&self) -> Duration {
        *self.0.lock().expect("clock lock")
    }

    fn sleep(&self, d: Duration) {
        self.advance(d);
    }
}

/// Anything that answers a chat conversation.
pub trait ChatEndpoint: Send + Sync {
    /// `timeout` is the remaining session budget.
    fn complete(
        &self,
        model: &ModelProfile,
        messages: &[ChatMessage],
        timeout: Duration,
    ) -> Result<ChatReply, EndpointError>;
}

/// JSON body of a chat-completions request.
pub fn request_body(model: &ModelProfile, messages: &[ChatMessage]) -> Value {
    json!({
        "model": model.name,
        "messages": messages,
        "temperature": model.temperature,
        "max_tokens": MAX_TOKENS,
    })
}

fn parse_reply(v: &Value) -> Result<ChatReply, EndpointError> {
    let content = v
        .pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .ok_or_else(|| EndpointError::Protocol("missing choices[0].message.content".into()))?;
    Ok(ChatReply {
        content: content.to_string(),
        prompt_tokens: v.pointer("/usage/prompt_tokens").and_then(Value::as_u64),
        completion_tokens: v.pointer("/usage/completion_tokens").and_then(Value::as_u64),
    })
}

/// Client for `POST {base}/chat/completions`.
pub struct OpenAiEndpoint {
    url: String,
    api_key: Option<String>,
    client: reqwest::blocking::Client,
}

impl OpenAiEndpoint {
    /// `base` may be the server root, a `/v1` prefix, or the full
    /// `/chat/completions` URL.
    pub fn new(base: &str) -> Result<Self, EndpointError> {
        let base = base.trim_end_matches('/');
        let url = if base.ends_with("/chat/completions") {
            base.to_string()
        } else {
            format!("{base}/chat/completions")
        };
        let client = reqwest::blocking::Client::builder()
            .build()
            .map_err(|e| EndpointError::Transport(e.to_string()))?;
        Ok(OpenAiEndpoint {
            url,
            api_key: std::env::var(API_KEY_ENV).ok().filter(|k| !k.is_empty()),
            client,
        })
    }

    pub fn url(&self) -> &str {
        &self.url
    }
}

impl ChatEndpoint for OpenAiEndpoint {
    fn complete(
        &self,
        model: &ModelProfile,
        messages: &[ChatMessage],
        timeout: Duration,
    ) -> Result<ChatReply, EndpointError> {
        let mut req = self
            .client
            .post(&self.url)
            .timeout(timeout.max(Duration::from_millis(1)))
            .json(&request_body(model, messages));
        if let Some(key) = &self.api_key {
            req = req.bearer_auth(key);
        }
        let resp = req.send().map_err(|e| EndpointError::Transport(e.to_string()))?;
        let status = resp.status();
        let text = resp.text().map_err(|e| EndpointError::Transport(e.to_string()))?;
        if !status.is_success() {
            return Err(EndpointError::Status {
                status: status.as_u16(),
                body: text.chars().take(500).collect(),
            });
        }
        let v: Value = serde_json::from_str(&text).map_err(|e| EndpointError::Protocol(e.to_string()))?;
        parse_reply(&v)
    }
}

/// Retries transient failures with exponential backoff.
pub struct Retrying<E> {
    inner: E,
    attempts: u32,
    backoff: Duration,
    clock: Arc<dyn Clock>,
}

impl<E: ChatEndpoint> Retrying<E> {
    pub fn new(inner: E, attempts: u32, backoff: Duration, clock: Arc<dyn Clock>) -> Self {
        Retrying {
            inner,
            attempts: attempts.max(1),
            backoff,
            clock,
        }
    }
}

impl<E: ChatEndpoint> ChatEndpoint for Retrying<E> {
    fn complete(
        &self,
        model: &ModelProfile,
        messages: &[ChatMessage],
        timeout: Duration,
    ) -> Result<ChatReply, EndpointError> {
        let start = self.clock.now();
        let mut delay = self.backoff;
        let mut attempt = 1;
        loop {
            let left = timeout.saturating_sub(self.clock.now() - start);
            match self.inner.complete(model, messages, left) {
                Err(e) if e.is_transient() && attempt < self.attempts => {
                    let left = timeout.saturating_sub(self.clock.now() - start);
                    if left <= delay {
                        return Err(e);
                    }
                    log::warn!("retrying after {e} (attempt {attempt})");
                    self.clock.sleep(delay);
                    delay *= 2;
                    attempt += 1;
                }
                other => return other,
            }
        }
    }
}

/// Spaces consecutive requests at least `min_interval` apart.
pub struct RateLimited<E> {
    inner: E,
    min_interval: Duration,
    clock: Arc<dyn Clock>,
    next_slot: Mutex<Duration>,
}

impl<E: ChatEndpoint> RateLimited<E> {
    pub fn new(inner: E, min_interval: Duration, clock: Arc<dyn Clock>) -> Self {
        RateLimited {
            inner,
            min_interval,
            clock,
            next_slot: Mutex::new(Duration::ZERO),
        }
    }
}

impl<E: ChatEndpoint> ChatEndpoint for RateLimited<E> {
    fn complete(
        &self,
        model: &ModelProfile,
        messages: &[ChatMessage],
        timeout: Duration,
    ) -> Result<ChatReply, EndpointError> {
        let wait = {
            let mut slot = self.next_slot.lock().expect("rate limit lock");
            let now = self.clock.now();
            let start = (*slot).max(now);
            *slot = start + self.min_interval;
            start - now
        };
        if !wait.is_zero() {
            self.clock.sleep(wait);
        }
        self.inner.complete(model, messages, timeout.saturating_sub(wait))
    }
}

/// Replays canned replies and records every request.
pub struct ScriptedEndpoint {
    replies: Mutex<VecDeque<Result<ChatReply, EndpointError>>>,
    /// Reply used once the script runs out.
    fallback: Option<String>,
    latency: Duration,
    clock: Option<VirtualClock>,
    requests: Mutex<Vec<Vec<ChatMessage>>>,
}

impl ScriptedEndpoint {
    pub fn new<I, S>(replies: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        ScriptedEndpoint {
            replies: Mutex::new(
                replies
                    .into_iter()
                    .map(|r| {
                        Ok(ChatReply {
                            content: r.into(),
                            ..Default::default()
                        })
                    })
                    .collect(),
            ),
            fallback: None,
            latency: Duration::ZERO,
            clock: None,
            requests: Mutex::new(Vec::new()),
        }
    }

    /// Answers every request with `reply`.
    pub fn always(reply: impl Into<String>) -> Self {
        let mut e = ScriptedEndpoint::new(Vec::<String>::new());
        e.fallback = Some(reply.into());
        e
    }

    /// Queues a failure.
    pub fn push_error(&self, err: EndpointError) {
        self.replies.lock().expect("script lock").push_back(Err(err));
    }

    /// Each reply advances `clock` by `latency`.
    pub fn with_latency(mut self, latency: Duration, clock: VirtualClock) -> Self {
        self.latency = latency;
        self.clock = Some(clock);
        self
    }

    pub fn requests(&self) -> Vec<Vec<ChatMessage>> {
        self.requests.lock().expect("requests lock").clone()
    }
}

impl ChatEndpoint for ScriptedEndpoint {
    fn complete(
        &self,
        _model: &ModelProfile,
        messages: &[ChatMessage],
        _timeout: Duration,
    ) -> Result<ChatReply, EndpointError> {
        self.requests
            .lock()
            .expect("requests lock")
            .push(messages.to_vec());
        if let Some(c) = &self.clock {
            c.advance(self.latency);
        }
        let next = self.replies.lock().expect("script lock").pop_front();
        match (next, &self.fallback) {
            (Some(r), _) => r,
            (None, Some(f)) => Ok(ChatReply {
                content: f.clone(),
                ..Default::default()
            }),
            (None, None) => Err(EndpointError::Protocol("script exhausted".into())),
        }
    }
}

impl<E: ChatEndpoint + ?Sized> ChatEndpoint for Arc<E> {
    fn complete(
        &self,
        model: &ModelProfile,
        messages: &[ChatMessage],
        timeout: Duration,
    ) -> Result<ChatReply, EndpointError> {
        (**self).complete(model, messages, timeout)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile() -> ModelProfile {
        ModelProfile::multi_turn("m", "http://localhost")
    }

    #[test]
    fn body_pins_temperature_and_token_cap() {
        let b = request_body(&profile(), &[ChatMessage::user("hi")]);
        assert_eq!(b["temperature"], 0.0);
        assert_eq!(b["max_tokens"], 1024);
        assert_eq!(b["messages"][0]["role"], "user");
    }

    #[test]
    fn reply_parsing() {
        let v = json!({"choices": [{"message": {"role": "assistant", "content": "x"}}], "usage": {"prompt_tokens": 3, "completion_tokens": 4}});
        let r = parse_reply(&v).unwrap();
        assert_eq!((r.content.as_str(), r.prompt_tokens, r.completion_tokens), ("x", Some(3), Some(4)));
        assert!(parse_reply(&json!({"choices": []})).is_err());
    }

    #[test]
    fn retry_recovers_from_transient_errors_only() {
        let clock = VirtualClock::default();
        let inner = ScriptedEndpoint::new(["ok"]);
        inner.replies.lock().unwrap().push_front(Err(EndpointError::Status {
            status: 503,
            body: String::new(),
        }));
        let r = Retrying::new(inner, 3, Duration::from_secs(1), Arc::new(clock.clone()));
        let reply = r.complete(&profile(), &[], Duration::from_secs(90)).unwrap();
        assert_eq!(reply.content, "ok");
        assert_eq!(clock.now(), Duration::from_secs(1));

        let inner = ScriptedEndpoint::new(["ok"]);
        inner.replies.lock().unwrap().push_front(Err(EndpointError::Status {
            status: 400,
            body: String::new(),
        }));
        let r = Retrying::new(inner, 3, Duration::from_secs(1), Arc::new(clock));
        assert!(r.complete(&profile(), &[], Duration::from_secs(90)).is_err());
    }

    #[test]
    fn rate_limit_spaces_requests() {
        let clock = VirtualClock::default();
        let r = RateLimited::new(
            ScriptedEndpoint::always("x"),
            Duration::from_secs(2),
            Arc::new(clock.clone()),
        );
        for _ in 0..3 {
            r.complete(&profile(), &[], Duration::from_secs(90)).unwrap();
        }
        assert_eq!(clock.now(), Duration::from_secs(4));
    }
}
