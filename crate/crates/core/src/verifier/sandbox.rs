//! Child-process execution with resource limits and a hard deadline.

use std::io::{Read, Write};
use std::os::unix::process::CommandExt;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use serde_json::Value;

use super::VerifierError;

const RUNNER: &str = include_str!("runner.py");
const SENTINEL: &str = "@@mutaprobe-result@@";

/// Imports made available to every program, as in the benchmarks' own harnesses.
pub const PRELUDE: &str = "\
import math, collections, heapq, bisect, itertools, functools, operator, string, re, copy
from typing import *
from collections import *
from heapq import *
from bisect import *
from itertools import *
from functools import *
from math import *
from builtins import *
";

const MEMORY_LIMIT_BYTES: u64 = 2 << 30;
const FILE_SIZE_LIMIT_BYTES: u64 = 16 << 20;
const STDERR_EXCERPT: usize = 2000;

/// Raw result of one child run.
#[derive(Debug, Clone)]
pub struct RawRun {
    /// Parsed result object, absent if the child died before reporting.
    pub result: Option<Value>,
    pub stderr: String,
    pub killed: bool,
    pub wall_time: Duration,
}

/// Resolves `bin` to an absolute interpreter path.
pub fn find_interpreter(bin: &str) -> Result<PathBuf, VerifierError> {
    let candidate = Path::new(bin);
    if candidate.components().count() > 1 {
        return if candidate.is_file() {
            Ok(candidate.to_path_buf())
        } else {
            Err(VerifierError::SandboxUnavailable(bin.to_string()))
        };
    }
    std::env::var_os("PATH")
        .iter()
        .flat_map(std::env::split_paths)
        .map(|dir| dir.join(bin))
        .find(|p| p.is_file())
        .ok_or_else(|| VerifierError::SandboxUnavailable(bin.to_string()))
}

fn script(payload: &Value) -> String {
    let json_text = serde_json::to_string(payload).expect("payload serializes");
    let literal = serde_json::to_string(&json_text).expect("string serializes");
    let prelude = serde_json::to_string(PRELUDE).expect("string serializes");
    format!("import json\nPAYLOAD = json.loads({literal})\nPRELUDE = {prelude}\n{RUNNER}")
}

fn set_limits(cpu_seconds: u64) {
    let limit = |resource, value: u64| unsafe {
        let r = libc::rlimit {
            rlim_cur: value as libc::rlim_t,
            rlim_max: value as libc::rlim_t,
        };
        libc::setrlimit(resource, &r);
    };
    limit(libc::RLIMIT_AS, MEMORY_LIMIT_BYTES);
    limit(libc::RLIMIT_FSIZE, FILE_SIZE_LIMIT_BYTES);
    limit(libc::RLIMIT_CORE, 0);
    limit(libc::RLIMIT_CPU, cpu_seconds);
}

fn last_result(stdout: &str) -> Option<Value> {
    stdout
        .lines()
        .rev()
        .find_map(|l| l.strip_prefix(SENTINEL))
        .and_then(|j| serde_json::from_str(j).ok())
}

/// Runs the embedded runner on `payload` in a fresh interpreter inside an
/// empty temporary directory, killing it after `deadline`.
pub fn run(python: &Path, payload: &Value, deadline: Duration) -> Result<RawRun, VerifierError> {
    let dir = tempfile::tempdir().map_err(VerifierError::Io)?;
    let cpu = deadline.as_secs() + 2;
    let mut cmd = Command::new(python);
    cmd.args(["-I", "-"])
        .current_dir(dir.path())
        .env_clear()
        .env("PYTHONHASHSEED", "0")
        .env("PYTHONIOENCODING", "utf-8")
        .env("PYTHONDONTWRITEBYTECODE", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    unsafe {
        cmd.pre_exec(move || {
            libc::setpgid(0, 0);
            set_limits(cpu);
            Ok(())
        });
    }
    let start = Instant::now();
    let mut child = cmd.spawn().map_err(VerifierError::Io)?;
    let pid = child.id() as libc::pid_t;

    let mut stdin = child.stdin.take().expect("stdin piped");
    let text = script(payload);
    let writer = thread::spawn(move || {
        let _ = stdin.write_all(text.as_bytes());
    });
    let mut stdout = child.stdout.take().expect("stdout piped");
    let out_reader = thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = stdout.read_to_end(&mut buf);
        buf
    });
    let mut stderr = child.stderr.take().expect("stderr piped");
    let err_reader = thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = stderr.read_to_end(&mut buf);
        buf
    });

    let mut killed = false;
    loop {
        if child.try_wait().map_err(VerifierError::Io)?.is_some() {
            break;
        }
        if start.elapsed() >= deadline {
            unsafe {
                libc::kill(-pid, libc::SIGKILL);
            }
            let _ = child.kill();
            let _ = child.wait();
            killed = true;
            break;
        }
        thread::sleep(Duration::from_millis(5));
    }
    let wall_time = start.elapsed();
    // A surviving grandchild could hold the pipes open.
    unsafe {
        libc::kill(-pid, libc::SIGKILL);
    }
    let _ = writer.join();
    let out = String::from_utf8_lossy(&out_reader.join().unwrap_or_default()).into_owned();
    let err = String::from_utf8_lossy(&err_reader.join().unwrap_or_default()).into_owned();
    let stderr: String = {
        let chars: Vec<char> = err.chars().collect();
        chars[chars.len().saturating_sub(STDERR_EXCERPT)..].iter().collect()
    };
    Ok(RawRun {
        result: if killed { None } else { last_result(&out) },
        stderr,
        killed,
        wall_time,
    })
}
