//! Executes programs against their tests in a sandboxed interpreter.
//!
//! Every call spawns a fresh `python3 -I` child in an empty temporary
//! directory with cleared environment, resource limits, sockets disabled and
//! a per-test interval timer. The child reports one JSON object on stdout.

pub mod fuzz;
pub mod sandbox;

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::program::TestCase;

/// Per-test timeout used unless configured otherwise.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);

/// Environment variable naming the interpreter.
pub const PYTHON_ENV: &str = "MUTAPROBE_PYTHON";

#[derive(Debug, thiserror::Error)]
pub enum VerifierError {
    #[error("no Python interpreter found at `{0}`")]
    SandboxUnavailable(String),
    #[error("sandbox i/o: {0}")]
    Io(#[source] std::io::Error),
}

/// Aggregate outcome of running a program's tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExecStatus {
    Passed,
    Failed,
    Crashed,
    Timeout,
}

/// Verdict for one test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestVerdict {
    pub verdict: ExecStatus,
    /// `repr` of the returned value, when the call returned.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
    /// Exception type name, when the call raised.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionResult {
    pub status: ExecStatus,
    pub tests: Vec<TestVerdict>,
    pub stderr: String,
    pub wall_time: f64,
}

impl ExecutionResult {
    fn aggregate(tests: Vec<TestVerdict>, stderr: String, wall_time: f64) -> Self {
        // Timeout dominates crash, crash dominates failure.
        let status = tests
            .iter()
            .map(|t| t.verdict)
            .max()
            .unwrap_or(ExecStatus::Passed);
        ExecutionResult {
            status,
            tests,
            stderr,
            wall_time,
        }
    }
}

/// Result of evaluating one call.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CallOutcome {
    /// `repr` of the returned value.
    Value { value: String },
    /// The call raised; holds the exception type name.
    Raised { error: String },
    Timeout,
    /// The interpreter died without reporting.
    Crashed,
}

/// A configured interpreter plus limits.
#[derive(Debug, Clone)]
pub struct Sandbox {
    python: PathBuf,
    timeout: Duration,
}

impl Sandbox {
    /// Locates `python_bin` (a path or a name on `PATH`).
    pub fn new(python_bin: &str, timeout: Duration) -> Result<Self, VerifierError> {
        Ok(Sandbox {
            python: sandbox::find_interpreter(python_bin)?,
            timeout,
        })
    }

    /// Interpreter from `$MUTAPROBE_PYTHON`, falling back to `python3`.
    pub fn from_env() -> Result<Self, VerifierError> {
        let bin = std::env::var(PYTHON_ENV).unwrap_or_else(|_| "python3".into());
        Sandbox::new(&bin, DEFAULT_TIMEOUT)
    }

    pub fn python(&self) -> &Path {
        &self.python
    }

    pub fn timeout(&self) -> Duration {
        self.timeout
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    /// Hard deadline for a child that performs `steps` timed operations.
    fn deadline(&self, steps: usize) -> Duration {
        self.timeout * (steps as u32).max(1) + Duration::from_secs(5)
    }

    fn run(&self, payload: Value, steps: usize) -> Result<sandbox::RawRun, VerifierError> {
        sandbox::run(&self.python, &payload, self.deadline(steps))
    }

    /// Runs `entry(input) == expected` for every test, each against a freshly
    /// executed copy of `source`.
    pub fn verify(
        &self,
        source: &str,
        entry: &str,
        tests: &[TestCase],
    ) -> Result<ExecutionResult, VerifierError> {
        let payload = json!({
            "mode": "verify",
            "source": source,
            "entry": entry,
            "timeout": self.timeout.as_secs_f64(),
            "tests": tests.iter().map(|t| json!({"input": t.input_expr, "expected": t.expected_output})).collect::<Vec<_>>(),
        });
        // Loading, calling, evaluating the expectation and comparing are each timed.
        let raw = self.run(payload, tests.len() * 4)?;
        let wall = raw.wall_time.as_secs_f64();
        let verdicts = raw
            .result
            .as_ref()
            .and_then(|r| r.get("tests"))
            .and_then(|t| serde_json::from_value::<Vec<TestVerdict>>(t.clone()).ok());
        let tests = match verdicts {
            Some(v) if v.len() == tests.len() => v,
            _ => {
                let verdict = if raw.killed {
                    ExecStatus::Timeout
                } else {
                    ExecStatus::Crashed
                };
                vec![
                    TestVerdict {
                        verdict,
                        actual: None,
                        error: None
                    };
                    tests.len()
                ]
            }
        };
        Ok(ExecutionResult::aggregate(tests, raw.stderr, wall))
    }

    /// Evaluates `entry(input)` for each input in one child process.
    pub fn evaluate_calls(
        &self,
        source: &str,
        entry: &str,
        inputs: &[String],
    ) -> Result<Vec<CallOutcome>, VerifierError> {
        let payload = json!({
            "mode": "calls",
            "source": source,
            "entry": entry,
            "timeout": self.timeout.as_secs_f64(),
            "inputs": inputs,
        });
        let raw = self.run(payload, inputs.len() * 2)?;
        let parsed = raw
            .result
            .as_ref()
            .and_then(|r| r.get("calls"))
            .and_then(|c| serde_json::from_value::<Vec<CallOutcome>>(c.clone()).ok());
        Ok(match parsed {
            Some(v) if v.len() == inputs.len() => v,
            _ if raw.killed => vec![CallOutcome::Timeout; inputs.len()],
            _ => vec![CallOutcome::Crashed; inputs.len()],
        })
    }

    /// Evaluates one call and returns the `repr` of its value.
    pub fn evaluate_call(
        &self,
        source: &str,
        entry: &str,
        input: &str,
    ) -> Result<CallOutcome, VerifierError> {
        let mut v = self.evaluate_calls(source, entry, &[input.to_string()])?;
        Ok(v.pop().unwrap_or(CallOutcome::Crashed))
    }

    /// Evaluates two standalone expressions and compares them with `==`.
    /// Anything that fails to evaluate compares unequal.
    pub fn compare(&self, left: &str, right: &str) -> Result<bool, VerifierError> {
        let payload = json!({
            "mode": "compare",
            "left": left,
            "right": right,
            "timeout": self.timeout.as_secs_f64(),
        });
        let raw = self.run(payload, 3)?;
        Ok(raw
            .result
            .as_ref()
            .and_then(|r| r.get("equal"))
            .and_then(Value::as_bool)
            .unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(v: ExecStatus) -> TestVerdict {
        TestVerdict {
            verdict: v,
            actual: None,
            error: None,
        }
    }

    #[test]
    fn status_precedence() {
        use ExecStatus::*;
        let agg = |vs: &[ExecStatus]| {
            ExecutionResult::aggregate(vs.iter().copied().map(verdict).collect(), String::new(), 0.0)
                .status
        };
        assert_eq!(agg(&[Passed, Passed]), Passed);
        assert_eq!(agg(&[Passed, Failed]), Failed);
        assert_eq!(agg(&[Failed, Crashed]), Crashed);
        assert_eq!(agg(&[Crashed, Timeout, Failed]), Timeout);
        assert_eq!(agg(&[]), Passed);
    }

    #[test]
    fn call_outcome_wire_shape() {
        let v: Vec<CallOutcome> = serde_json::from_str(
            r#"[{"kind":"value","value":"6"},{"kind":"raised","error":"ZeroDivisionError","message":"x"},{"kind":"timeout"}]"#,
        )
        .unwrap();
        assert_eq!(
            v,
            [
                CallOutcome::Value { value: "6".into() },
                CallOutcome::Raised {
                    error: "ZeroDivisionError".into()
                },
                CallOutcome::Timeout
            ]
        );
    }
}
