import os
import subprocess
from pathlib import Path

import pytest

XCOM = os.environ.get("XCOM_BIN", str(Path(__file__).resolve().parents[2] / "build" / "xcom"))
FIXTURES = Path(os.environ.get("XCOM_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "examples_xcom"))
EVEN = str(FIXTURES / "even_list.xcom")
UNKNOWN = str(FIXTURES / "unknown_type.xcom")


def xcom(*args, stdin=None):
    return subprocess.run([XCOM, *args], input=stdin, capture_output=True, text=True, timeout=60)


def test_run_prints_observables():
    r = xcom("run", EVEN)
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0] == "length = 0"
    assert lines[1].startswith("list = [head=2,tail=[head=4,")


@pytest.mark.parametrize("args", [["exec"], ["desugar", "--eval"], ["desugar", "--mode", "static", "--eval"]])
def test_backends_print_the_same_list(args):
    r = xcom(*args, EVEN)
    assert r.returncode == 0
    assert "[head=100,tail=[]]" in r.stdout


def test_stdin():
    r = xcom("run", "-", stdin="value x is 1 + 2 end value y is x mod 2 end")
    assert r.returncode == 0
    assert r.stdout.splitlines() == ["x = 3", "y = 1"]


def test_fmt_is_idempotent(tmp_path):
    once = xcom("fmt", "--page", "40", "--ribbon", "20", EVEN).stdout
    path = tmp_path / "once.xcom"
    path.write_text(once)
    assert xcom("fmt", "--page", "40", "--ribbon", "20", str(path)).stdout == once


def test_parse_json():
    r = xcom("parse", "--json", EVEN)
    assert r.returncode == 0
    assert r.stdout.lstrip().startswith("{")


def test_compile_listing():
    r = xcom("compile", "--dump-resolved", "-", stdin="value x is 1 end")
    assert r.stdout.splitlines() == ["0: PushInteger(1)", "1: SetLocal(x,0)", "2: Pop"]


def test_cfg_counts():
    r = xcom("cfg", EVEN)
    assert r.stdout.splitlines()[:2] == ["nodes 12", "edges 13"]
    dot = xcom("cfg", "--dot", EVEN).stdout
    assert dot.startswith("digraph flow {")


def test_secd():
    r = xcom("secd", r"(\x.\y.add [fst=x,snd=y]) 10 20")
    assert r.returncode == 0
    assert r.stdout.strip() == "30"


def test_check():
    r = xcom("check", "--seed", "7", "--count", "50")
    assert r.returncode == 0
    assert "divergences=0" in r.stdout


@pytest.mark.parametrize(
    "args, code, text",
    [
        (["desugar", "--mode", "static"], 2, "Unknown type Missing"),
        (["run"], 1, "unbound type Missing"),
        (["desugar", "--mode", "rt", "--eval"], 1, "unbound variable Missing"),
        (["exec"], 2, "Unknown type Missing"),
    ],
)
def test_unknown_type_exit_codes(args, code, text):
    r = xcom(*args, UNKNOWN)
    assert r.returncode == code
    assert text in r.stderr


def test_syntax_error_exit_code():
    r = xcom("run", "-", stdin="begin value end")
    assert r.returncode == 2
    assert r.stderr.startswith("xcom: 1:")


def test_runtime_error_exit_code():
    r = xcom("run", "-", stdin="value x is 1 mod 0 end")
    assert r.returncode == 1


def test_usage_errors():
    assert xcom().returncode == 64
    assert xcom("frobnicate").returncode == 64
    assert xcom("run", "--no-such-flag", EVEN).returncode == 64
    assert xcom("--help").returncode == 0


def test_missing_file():
    r = xcom("run", "/nonexistent/file.xcom")
    assert r.returncode == 1
