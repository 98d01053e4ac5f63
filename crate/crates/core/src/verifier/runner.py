import builtins
import io
import json
import signal
import sys

_real_stdout = sys.stdout
SENTINEL = "@@mutaprobe-result@@"


class _Timeout(BaseException):
    pass


def _on_alarm(signum, frame):
    raise _Timeout()


def _no_network(*args, **kwargs):
    raise PermissionError("network access is disabled in the sandbox")


def _lock_down():
    import socket

    socket.socket = _no_network
    socket.create_connection = _no_network
    socket.getaddrinfo = _no_network
    signal.signal(signal.SIGALRM, _on_alarm)
    sys.setrecursionlimit(10000)


def _fresh_namespace():
    ns = {"__name__": "__main__", "__builtins__": builtins}
    exec(PRELUDE, ns)
    return ns


def _timed(fn, seconds):
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        return fn()
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)


def _outcome(fn, seconds):
    sys.stdout = io.StringIO()
    try:
        value = _timed(fn, seconds)
        return {"kind": "value", "value": value}
    except _Timeout:
        return {"kind": "timeout"}
    except RecursionError:
        return {"kind": "raised", "error": "RecursionError"}
    except BaseException as e:
        return {"kind": "raised", "error": type(e).__name__, "message": str(e)[:300]}
    finally:
        sys.stdout = _real_stdout


def _safe_repr(v):
    try:
        return repr(v)
    except BaseException as e:
        return "<unrepresentable %s>" % type(e).__name__


def _load(source, seconds):
    ns = _fresh_namespace()
    code = compile(source, "<program>", "exec")
    res = _outcome(lambda: exec(code, ns), seconds)
    return ns, res


def _call(source, entry, args_text, seconds):
    ns, res = _load(source, seconds)
    if res["kind"] != "value":
        return res
    return _outcome(lambda: eval("%s(%s)" % (entry, args_text), ns), seconds)


def verify(p):
    verdicts = []
    for t in p["tests"]:
        res = _call(p["source"], p["entry"], t["input"], p["timeout"])
        if res["kind"] == "timeout":
            verdicts.append({"verdict": "timeout"})
            continue
        if res["kind"] == "raised":
            verdicts.append({"verdict": "crashed", "error": res["error"], "message": res.get("message", "")})
            continue
        actual = res["value"]
        exp = _outcome(lambda: eval(t["expected"], _fresh_namespace()), p["timeout"])
        if exp["kind"] != "value":
            verdicts.append({"verdict": "crashed", "error": "BadExpected", "actual": _safe_repr(actual)})
            continue
        eq = _outcome(lambda: bool(actual == exp["value"]), p["timeout"])
        ok = eq["kind"] == "value" and eq["value"]
        verdicts.append({"verdict": "passed" if ok else "failed", "actual": _safe_repr(actual)})
    return {"tests": verdicts}


def calls(p):
    out = []
    for args_text in p["inputs"]:
        res = _call(p["source"], p["entry"], args_text, p["timeout"])
        if res["kind"] == "value":
            res["value"] = _safe_repr(res["value"])
        out.append(res)
    return {"calls": out}


def compare(p):
    left = _outcome(lambda: eval(p["left"], _fresh_namespace()), p["timeout"])
    right = _outcome(lambda: eval(p["right"], _fresh_namespace()), p["timeout"])
    if left["kind"] != "value" or right["kind"] != "value":
        return {"equal": False, "evaluable": left["kind"] == "value"}
    eq = _outcome(lambda: bool(left["value"] == right["value"]), p["timeout"])
    return {"equal": eq["kind"] == "value" and eq["value"], "evaluable": True}


def main():
    _lock_down()
    mode = PAYLOAD["mode"]
    result = {"verify": verify, "calls": calls, "compare": compare}[mode](PAYLOAD)
    _real_stdout.write("\n" + SENTINEL + json.dumps(result) + "\n")
    _real_stdout.flush()


main()
