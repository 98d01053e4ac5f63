use std::sync::Arc;

use mutaprobe_core::harness::endpoint::{ChatEndpoint, EndpointError, ScriptedEndpoint, VirtualClock};
use mutaprobe_core::harness::{ModelProfile, Session, Termination};
use mutaprobe_core::mutation::{MutationClass, Site, Variant, Verification};
use mutaprobe_core::pipeline::corpus::{VerificationRecord, VARIANTS, VERIFICATION};
use mutaprobe_core::pipeline::{self, EvaluateOptions, MutateOptions, RunDir};
use mutaprobe_core::verifier::{ExecStatus, Sandbox};

const SUM_EVEN: &str = r#"{"id": "sum_even", "source": "def f(nums):\n    sum = 0\n    for n in nums:\n        if n % 2 == 0:\n            sum += n\n        else:\n            sum += 0\n    return sum\n", "entry_point": "f", "tests": [{"input_expr": "[1, 2, 3, 4, 5]", "expected_output": "6"}, {"input_expr": "[]", "expected_output": "0"}], "origin": "local"}"#;

fn setup(seed: u64) -> (tempfile::TempDir, RunDir) {
    let dir = tempfile::tempdir().unwrap();
    let bench = dir.path().join("bench.jsonl");
    std::fs::write(&bench, SUM_EVEN).unwrap();
    let run = RunDir::new(dir.path().join("run"));
    pipeline::ingest(&run, &bench, seed, 90.0).unwrap();
    (dir, run)
}

fn sandbox() -> Sandbox {
    Sandbox::from_env().expect("python3 available")
}

fn manifest_id(run: &RunDir) -> String {
    run.load_manifest().unwrap().id
}

#[test]
fn mutate_is_reproducible_and_gated() {
    let (_d, run) = setup(3);
    let g = pipeline::mutate(&run, Some(&sandbox()), MutateOptions { jobs: 2, differential: 20 }).unwrap();
    // Five classes, at most two variants each, every one equivalent.
    assert!(g.variants >= 5 && g.variants <= 10, "{g:?}");
    assert_eq!(g.equivalent, g.variants);
    let first = std::fs::read(run.path(VARIANTS)).unwrap();
    pipeline::mutate(&run, None, MutateOptions::default()).unwrap();
    let pending: Vec<Variant> = run.read_jsonl(VARIANTS, &manifest_id(&run)).unwrap();
    assert!(pending.iter().all(|v| v.verified == Verification::Pending));
    pipeline::verify(&run, &sandbox(), false, MutateOptions::default()).unwrap();
    assert_eq!(std::fs::read(run.path(VARIANTS)).unwrap(), first);
}

fn inject(run: &RunDir, name: &str, source: &str) -> String {
    let id = manifest_id(run);
    let mut variants: Vec<Variant> = run.read_jsonl(VARIANTS, &id).unwrap();
    let mut broken = variants[0].clone();
    broken.id = format!("sum_even::for_to_while::{name}");
    broken.class = MutationClass::ForToWhile;
    broken.site = "body[0].body[1]".parse::<Site>().unwrap();
    broken.source = source.into();
    broken.verified = Verification::Pending;
    variants.push(broken);
    run.write_jsonl(VARIANTS, &id, &variants).unwrap();
    format!("sum_even::for_to_while::{name}")
}

fn status_of(run: &RunDir, subject: &str) -> Verification {
    let after: Vec<Variant> = run.read_jsonl(VARIANTS, &manifest_id(run)).unwrap();
    after.iter().find(|v| v.id == subject).unwrap().verified
}

// Reads one element past the end.
const PAST_END: &str = "def f(nums):\n    sum = 0\n    i = 0\n    while i <= len(nums):\n        n = nums[i]\n        if n % 2 == 0:\n            sum += n\n        i += 1\n    return sum\n";
// Skips the first element, which the test suite cannot see because it is odd.
const SKIPS_FIRST: &str = "def f(nums):\n    sum = 0\n    i = 1\n    while i < len(nums):\n        n = nums[i]\n        if n % 2 == 0:\n            sum += n\n        i += 1\n    return sum\n";

#[test]
fn off_by_one_mutants_are_rejected_and_kept() {
    let (_d, run) = setup(3);
    pipeline::mutate(&run, Some(&sandbox()), MutateOptions::default()).unwrap();
    let id = manifest_id(&run);
    let past_end = inject(&run, "past_end", PAST_END);
    let skips_first = inject(&run, "skips_first", SKIPS_FIRST);

    let g = pipeline::verify(&run, &sandbox(), false, MutateOptions::default()).unwrap();
    assert_eq!(g.rejected, 1);
    assert_eq!(status_of(&run, &past_end), Verification::Rejected);
    // The tests alone accept this mutant; random inputs expose it.
    assert_eq!(status_of(&run, &skips_first), Verification::Equivalent);
    let g = pipeline::verify(&run, &sandbox(), true, MutateOptions { jobs: 2, differential: 50 }).unwrap();
    assert_eq!(g.rejected, 2);
    assert_eq!(status_of(&run, &skips_first), Verification::Rejected);

    let records: Vec<VerificationRecord> = run.read_jsonl(VERIFICATION, &id).unwrap();
    let r = records.iter().find(|r| r.subject == skips_first).unwrap();
    assert!(r.reason.as_deref().unwrap().contains("random inputs disagree"));
    assert!(records.iter().any(|r| r.subject == past_end && r.status == ExecStatus::Crashed));

    // Rejected variants stay in the corpus but never reach a model.
    let subjects = pipeline::evaluate::subjects(&run).unwrap();
    assert!(subjects.iter().all(|s| s.id != past_end && s.id != skips_first));
    assert_eq!(subjects.len(), g.equivalent + 1);
}

#[test]
fn evaluate_writes_one_transcript_per_subject_and_resumes() {
    let (_d, run) = setup(3);
    pipeline::mutate(&run, Some(&sandbox()), MutateOptions::default()).unwrap();
    let subjects = pipeline::evaluate::subjects(&run).unwrap();
    let profile = ModelProfile::multi_turn("qwen", "http://unused");
    let endpoint = Arc::new(ScriptedEndpoint::always("[ANSWER]\nassert f([1, 2, 3, 4, 5]) == 6\n[/ANSWER]"));
    let ep = endpoint.clone();
    let factory = move |_: &ModelProfile| Ok(ep.clone() as Arc<dyn ChatEndpoint>);
    let judge = |p: &str, e: &str| p == e;
    let clock = VirtualClock::default();
    let opts = EvaluateOptions {
        jobs: 3,
        ..Default::default()
    };
    let s = pipeline::evaluate(&run, &[profile.clone()], &factory, &judge, &clock, opts).unwrap();
    assert_eq!(s.sessions, subjects.len());
    assert_eq!(endpoint.requests().len(), subjects.len());

    // Simulate an interrupted run by dropping one transcript.
    let victim = run.session_path("qwen", &subjects[1].id);
    std::fs::remove_file(&victim).unwrap();
    let resume = EvaluateOptions { resume: true, ..opts };
    let s = pipeline::evaluate(&run, &[profile.clone()], &factory, &judge, &clock, resume).unwrap();
    assert_eq!((s.sessions, s.skipped), (1, subjects.len() - 1));
    let back: Session = serde_json::from_slice(&std::fs::read(&victim).unwrap()).unwrap();
    assert_eq!(back.manifest.as_deref(), Some(manifest_id(&run).as_str()));
    assert!(pipeline::evaluate(&run, &[profile], &factory, &judge, &clock, opts).is_err());

    let r = pipeline::report(&run).unwrap();
    let m = &r.models[0];
    assert_eq!(m.programs, 1);
    assert_eq!(m.correct.to_string(), "100.0");
    assert!(run.path("outcomes.jsonl").exists() && run.path("report.txt").exists());
}

#[test]
fn endpoint_failures_are_excluded_and_counted() {
    let (_d, run) = setup(4);
    pipeline::mutate(&run, Some(&sandbox()), MutateOptions::default()).unwrap();
    let factory = |_: &ModelProfile| {
        let ep = ScriptedEndpoint::new(Vec::<String>::new());
        ep.push_error(EndpointError::Status {
            status: 503,
            body: "down".into(),
        });
        Ok(Arc::new(ep) as Arc<dyn ChatEndpoint>)
    };
    let judge = |p: &str, e: &str| p == e;
    let s = pipeline::evaluate(
        &run,
        &[ModelProfile::single_turn("mistral", "http://unused")],
        &factory,
        &judge,
        &VirtualClock::default(),
        EvaluateOptions::default(),
    )
    .unwrap();
    // Only the first session sees the queued failure; the rest exhaust the script.
    assert_eq!(s.endpoint_errors, s.sessions);
    let r = pipeline::report(&run).unwrap();
    assert!(r.models.is_empty());
    assert!(r.notes.iter().any(|n| n.contains("excluded after endpoint errors")));
    assert!(r.notes.iter().any(|n| n.contains("no programs to rate")));
    let sessions = pipeline::report::load_sessions(&run, &manifest_id(&run), &mut Vec::new()).unwrap();
    assert!(sessions.iter().all(|s| s.outcome.termination == Termination::EndpointError));
}
