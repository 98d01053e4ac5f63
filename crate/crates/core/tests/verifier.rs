use std::time::{Duration, Instant};

use mutaprobe_core::program::TestCase;
use mutaprobe_core::verifier::{CallOutcome, ExecStatus, Sandbox};

const MIN_POSSIBLE_SUM: &str = "def minPossibleSum(n:int, target:int)->int:\n    i = 1\n    arr = {1}\n    while len(arr) < n:\n        i += 1\n        if target - i not in arr:\n            arr.add(i)\n    return sum(arr)\n";
const SUM_EVEN: &str = "def f(nums):\n    sum = 0\n    for n in nums:\n        if n % 2 == 0:\n            sum += n\n        else:\n            sum += 0\n    return sum\n";

fn sandbox() -> Sandbox {
    Sandbox::from_env().expect("python3 available")
}

fn case(input: &str, expected: &str) -> TestCase {
    TestCase {
        input_expr: input.into(),
        expected_output: expected.into(),
    }
}

#[test]
fn passes_and_fails_on_expected_value() {
    let sb = sandbox();
    let ok = sb
        .verify(MIN_POSSIBLE_SUM, "minPossibleSum", &[case("n = 1, target = 1", "1")])
        .unwrap();
    assert_eq!(ok.status, ExecStatus::Passed);
    assert_eq!(ok.tests[0].actual.as_deref(), Some("1"));
    let bad = sb
        .verify(MIN_POSSIBLE_SUM, "minPossibleSum", &[case("n = 1, target = 1", "3")])
        .unwrap();
    assert_eq!(bad.status, ExecStatus::Failed);
}

#[test]
fn divergent_program_times_out() {
    let sb = sandbox().with_timeout(Duration::from_secs(2));
    let start = Instant::now();
    let r = sb
        .verify("def f():\n    while True:\n        pass\n", "f", &[case("", "None")])
        .unwrap();
    assert_eq!(r.status, ExecStatus::Timeout);
    assert!(start.elapsed() < Duration::from_secs(10));
}

#[test]
fn timer_swallowing_program_is_killed() {
    let sb = sandbox().with_timeout(Duration::from_secs(1));
    let src = "def f():\n    while True:\n        try:\n            while True:\n                pass\n        except BaseException:\n            pass\n";
    let r = sb.verify(src, "f", &[case("", "None")]).unwrap();
    assert_eq!(r.status, ExecStatus::Timeout);
}

#[test]
fn crashes_are_reported_with_exception_type() {
    let r = sandbox()
        .verify("def f(x):\n    return 1 // x\n", "f", &[case("0", "0"), case("1", "1")])
        .unwrap();
    assert_eq!(r.status, ExecStatus::Crashed);
    assert_eq!(r.tests[0].error.as_deref(), Some("ZeroDivisionError"));
    assert_eq!(r.tests[1].verdict, ExecStatus::Passed);
}

#[test]
fn each_test_sees_fresh_module_state() {
    let src = "counter = 0\n\ndef f(n):\n    global counter\n    for _ in range(n):\n        counter += 1\n    return counter\n";
    let r = sandbox()
        .verify(src, "f", &[case("3", "3"), case("1", "1")])
        .unwrap();
    assert_eq!(r.status, ExecStatus::Passed);
}

#[test]
fn network_is_disabled() {
    let src = "import socket\ndef f():\n    socket.socket()\n    return 1\n";
    let out = sandbox().evaluate_call(src, "f", "").unwrap();
    assert_eq!(
        out,
        CallOutcome::Raised {
            error: "PermissionError".into()
        }
    );
}

#[test]
fn evaluate_call_returns_repr() {
    let sb = sandbox();
    assert_eq!(
        sb.evaluate_call(SUM_EVEN, "f", "[1, 2, 3, 4]").unwrap(),
        CallOutcome::Value { value: "6".into() }
    );
    assert_eq!(
        sb.evaluate_call(SUM_EVEN, "f", "[]").unwrap(),
        CallOutcome::Value { value: "0".into() }
    );
    assert_eq!(
        sb.evaluate_call("def f(s):\n    print('noise')\n    return s * 2\n", "f", "'ab'").unwrap(),
        CallOutcome::Value {
            value: "'abab'".into()
        }
    );
}

#[test]
fn compare_uses_python_equality() {
    let sb = sandbox();
    assert!(sb.compare("0.5", "1/2").unwrap());
    assert!(sb.compare("[1, (2, 'a')]", "[1, (2, \"a\")]").unwrap());
    assert!(!sb.compare("3", "1").unwrap());
    assert!(!sb.compare("undefined_name", "1").unwrap());
    assert!(!sb.compare("1 +", "1").unwrap());
}

#[test]
fn prelude_names_are_available() {
    let src = "def f(xs: List[int]) -> int:\n    return Counter(xs).most_common(1)[0][0]\n";
    let r = sandbox().verify(src, "f", &[case("[1, 2, 2]", "2")]).unwrap();
    assert_eq!(r.status, ExecStatus::Passed);
}
