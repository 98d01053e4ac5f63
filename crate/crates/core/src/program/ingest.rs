//! Loading benchmark exports into [`Program`]s.
//!
//! Three record layouts are recognised, per record:
//! - LiveCodeBench execution records: `function_name`, `code`, `input`
//!   (a full call such as `f(n = 1)`), `output`, and `question_id` or `id`;
//! - CruxEval records: `code`, `input` (argument text), `output`, `id`;
//!   the entry point is always `f`;
//! - the normalized [`Program`] layout written by this crate.
//!
//! Files may be JSON Lines or a single JSON array.

use std::collections::{BTreeMap, HashSet};

use rustpython_parser::ast::{self, Expr, Stmt};
use rustpython_parser::Parse;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Origin, Program, TestCase};

/// Modules whose use makes a program's output depend on more than its input.
pub const NONDETERMINISTIC_MODULES: &[&str] = &[
    "random", "secrets", "time", "datetime", "os", "pathlib", "shutil", "glob", "tempfile",
    "socket", "urllib", "http", "requests", "subprocess", "uuid",
];

/// A program dropped at ingest, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub id: String,
    pub reason: String,
}

#[derive(Debug, Default)]
pub struct IngestOutput {
    pub programs: Vec<Program>,
    pub excluded: Vec<Exclusion>,
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("record {index}: {message}")]
    Layout { index: usize, message: String },
}

/// Splits a JSONL or JSON-array document into records.
pub fn read_records(text: &str) -> Result<Vec<Value>, IngestError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return match serde_json::from_str::<Value>(trimmed) {
            Ok(Value::Array(items)) => Ok(items),
            Ok(_) => unreachable!("document starting with '[' parsed as non-array"),
            Err(source) => Err(IngestError::Json { line: 1, source }),
        };
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v = serde_json::from_str(line).map_err(|source| IngestError::Json {
            line: i + 1,
            source,
        })?;
        out.push(v);
    }
    Ok(out)
}

fn field<'a>(v: &'a Value, name: &str) -> Option<&'a str> {
    v.get(name).and_then(Value::as_str)
}

fn id_of(v: &Value, index: usize) -> String {
    for key in ["question_id", "id", "task_id"] {
        match v.get(key) {
            Some(Value::String(s)) => return s.clone(),
            Some(Value::Number(n)) => return n.to_string(),
            _ => {}
        }
    }
    format!("record_{index}")
}

/// Converts one record to a program. Does not validate the code.
pub fn adapt_record(v: &Value, index: usize) -> Result<Program, IngestError> {
    let layout = |message: &str| IngestError::Layout {
        index,
        message: message.to_string(),
    };
    if v.get("entry_point").is_some() && v.get("tests").is_some() {
        return serde_json::from_value(v.clone()).map_err(|e| layout(&e.to_string()));
    }
    let code = field(v, "code").ok_or_else(|| layout("missing `code`"))?;
    let input = field(v, "input").ok_or_else(|| layout("missing `input`"))?;
    let output = field(v, "output").ok_or_else(|| layout("missing `output`"))?;
    let id = id_of(v, index);
    if let Some(entry) = field(v, "function_name") {
        let args = strip_call(input, entry)
            .ok_or_else(|| layout(&format!("input is not a call to `{entry}`")))?;
        return Ok(Program {
            id,
            source: code.to_string(),
            entry_point: entry.to_string(),
            tests: vec![TestCase {
                input_expr: args.to_string(),
                expected_output: output.trim().to_string(),
            }],
            origin: Origin::LiveCodeBench,
        });
    }
    Ok(Program {
        id,
        source: code.to_string(),
        entry_point: "f".to_string(),
        tests: vec![TestCase {
            input_expr: input.trim().to_string(),
            expected_output: output.trim().to_string(),
        }],
        origin: Origin::CruxEval,
    })
}

/// `name(args)` to `args`. Inputs that are already bare argument text are
/// returned unchanged.
fn strip_call<'a>(input: &'a str, name: &str) -> Option<&'a str> {
    let t = input.trim();
    match t.strip_prefix(name) {
        Some(rest) if rest.trim_start().starts_with('(') => {
            let rest = rest.trim_start();
            let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
            Some(inner.trim())
        }
        _ => Some(t),
    }
}

/// Parses `entry(args)` for a test input, returning the call expression.
pub fn parse_call(entry: &str, input_expr: &str) -> Option<ast::ExprCall> {
    let text = format!("{entry}({input_expr})");
    match Expr::parse(&text, "<input>") {
        Ok(Expr::Call(c)) => Some(c),
        _ => None,
    }
}

/// Keyword names used by a program's test inputs.
pub fn test_keyword_names(program: &Program) -> HashSet<String> {
    program
        .tests
        .iter()
        .filter_map(|t| parse_call(&program.entry_point, &t.input_expr))
        .flat_map(|c| c.keywords.into_iter())
        .filter_map(|k| k.arg.map(|a| a.as_str().to_string()))
        .collect()
}

/// First nondeterministic module the program imports, if any.
pub fn nondeterministic_import(body: &[Stmt]) -> Option<String> {
    let flagged = |module: &str| {
        let root = module.split('.').next().unwrap_or(module);
        NONDETERMINISTIC_MODULES.contains(&root).then(|| root.to_string())
    };
    for (_, stmt) in super::visit::stmt_paths(body) {
        match &stmt {
            Stmt::Import(i) => {
                if let Some(m) = i.names.iter().find_map(|a| flagged(a.name.as_str())) {
                    return Some(m);
                }
            }
            Stmt::ImportFrom(i) => {
                if let Some(m) = i.module.as_ref().and_then(|m| flagged(m.as_str())) {
                    return Some(m);
                }
            }
            _ => {}
        }
    }
    None
}

/// Static checks a program must pass to enter the benchmark.
pub fn validate(program: &Program) -> Result<(), String> {
    let tree = program.parse().map_err(|e| e.to_string())?;
    if !tree.top_level_functions().any(|n| n == program.entry_point) {
        return Err(format!(
            "entry point `{}` is not a top-level function",
            program.entry_point
        ));
    }
    if program.tests.is_empty() {
        return Err("no tests".into());
    }
    for t in &program.tests {
        if parse_call(&program.entry_point, &t.input_expr).is_none() {
            return Err(format!("test input does not parse: {}", t.input_expr));
        }
        if Expr::parse(&t.expected_output, "<output>").is_err() {
            return Err(format!("expected output does not parse: {}", t.expected_output));
        }
    }
    if let Some(m) = nondeterministic_import(tree.body()) {
        return Err(format!("imports nondeterministic module `{m}`"));
    }
    Ok(())
}

/// Reads a benchmark export, merging records that share an id and source.
pub fn ingest_text(text: &str) -> Result<IngestOutput, IngestError> {
    let records = read_records(text)?;
    let mut merged: BTreeMap<String, Program> = BTreeMap::new();
    let mut order = Vec::new();
    let mut out = IngestOutput::default();
    for (i, r) in records.iter().enumerate() {
        let p = adapt_record(r, i)?;
        match merged.get_mut(&p.id) {
            Some(existing) if existing.source == p.source => {
                existing.tests.extend(p.tests);
            }
            Some(_) => out.excluded.push(Exclusion {
                id: p.id.clone(),
                reason: "duplicate id with different source".into(),
            }),
            None => {
                order.push(p.id.clone());
                merged.insert(p.id.clone(), p);
            }
        }
    }
    for id in order {
        let p = merged.remove(&id).expect("id recorded at insert");
        match validate(&p) {
            Ok(()) => out.programs.push(p),
            Err(reason) => out.excluded.push(Exclusion { id: p.id, reason }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn livecodebench_layout() {
        let line = r#"{"question_id": 2747, "function_name": "minimumPossibleSum", "code": "def minimumPossibleSum(n: int, target: int) -> int:\n    return n\n", "input": "minimumPossibleSum(n = 1, target = 1)", "output": "1", "id": "sample_1"}"#;
        let out = ingest_text(line).unwrap();
        assert_eq!(out.programs.len(), 1);
        let p = &out.programs[0];
        assert_eq!(p.id, "2747");
        assert_eq!(p.origin, Origin::LiveCodeBench);
        assert_eq!(p.tests[0].input_expr, "n = 1, target = 1");
        let kws = test_keyword_names(p);
        assert!(kws.contains("n") && kws.contains("target"));
    }

    #[test]
    fn cruxeval_layout_as_array() {
        let doc = r#"[{"code": "def f(nums):\n    return sum(nums)", "input": "[1, 2]", "output": "3", "id": "sample_0"}]"#;
        let out = ingest_text(doc).unwrap();
        let p = &out.programs[0];
        assert_eq!(p.entry_point, "f");
        assert_eq!(p.origin, Origin::CruxEval);
        assert_eq!(p.tests[0].input_expr, "[1, 2]");
    }

    #[test]
    fn exclusions_carry_reasons() {
        let doc = concat!(
            r#"{"code": "import random\ndef f(x):\n    return random.random()", "input": "1", "output": "0.5", "id": "a"}"#,
            "\n",
            r#"{"code": "def g(x): return x", "input": "1", "output": "1", "id": "b"}"#,
            "\n",
            r#"{"code": "def f(x) return x", "input": "1", "output": "1", "id": "c"}"#,
        );
        let out = ingest_text(doc).unwrap();
        assert!(out.programs.is_empty());
        let reasons: Vec<_> = out.excluded.iter().map(|e| e.reason.as_str()).collect();
        assert!(reasons[0].contains("random"));
        assert!(reasons[1].contains("entry point"));
        assert!(reasons[2].contains("syntax error"));
    }

    #[test]
    fn normalized_layout_roundtrips() {
        let p = Program {
            id: "x".into(),
            source: "def f(a):\n    return a\n".into(),
            entry_point: "f".into(),
            tests: vec![TestCase {
                input_expr: "1".into(),
                expected_output: "1".into(),
            }],
            origin: Origin::Local,
        };
        let line = serde_json::to_string(&p).unwrap();
        let out = ingest_text(&line).unwrap();
        assert_eq!(out.programs, vec![p]);
    }
}
