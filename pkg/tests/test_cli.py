import json
import subprocess
import sys
from fractions import Fraction

import pytest

from aalpha.cli import main, parse_alpha

from conftest import corpus_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, want", [
    (("charpoly", "--family", "K:3"),
     "x^3 - 6*a*x^2 + (9*a^2 + 6*a - 3)*x - (18*a^2 - 12*a + 2)"),
    (("charpoly", "A_"), "x^2 - 2*a*x + (2*a - 1)"),
    (("charpoly", "A_", "--at", "0"), "x^2 - 1"),
    (("charpoly", "A_", "--at", "0.5"), "x^2 - x"),
    (("charpoly", "Bw", "--at", "1/3"), "x^3 - 2*x^2"),
    (("charpoly", "Bw", "--at", "1/4"), "x^3 - 3/2*x^2 - 15/16*x - 1/8"),
    (("family", "P:5"), "DhC"),
    (("family", "K:2,2"), "C]"),
])
def test_text_outputs(capsys, argv, want):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == want


def test_charpoly_json(capsys):
    code, out, _ = run(capsys, "charpoly", "A_", "--at", "1/2", "--format", "json")
    assert json.loads(out) == {"graph6": "A_", "polynomial": "x^2 - 2*a*x + (2*a - 1)",
                               "alpha": "1/2", "value": "x^2 - x"}


@pytest.mark.parametrize("text, want", [("1/3", Fraction(1, 3)), ("0.1", Fraction(1, 10)),
                                        ("-2", Fraction(-2)), ("1e-3", Fraction(1, 1000))])
def test_parse_alpha_is_exact(text, want):
    assert parse_alpha(text) == want


@pytest.mark.parametrize("argv", [
    ("charpoly", "zz"),
    ("charpoly",),
    ("charpoly", "A_", "--family", "P:2"),
    ("charpoly", "A_", "--at", "1/0"),
    ("charpoly", "A_", "--at", "nan"),
    ("family", "Q:3"),
    ("decode", "--poly", "x^2 - 3*a*x"),
    ("census", "/nonexistent.g6"),
    ("census", str(corpus_path(3)), "--threads", "0"),
])
def test_input_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and "error" in err and not out


def test_census_tsv_and_json(capsys):
    code, out, _ = run(capsys, "census", str(corpus_path(4)))
    assert (code, out) == (0, "4\t11\t11\t0\t0.000000000\t1\n")
    code, out, _ = run(capsys, "census", str(corpus_path(4)), "--format", "json", "--families")
    assert json.loads(out) == {"n": 4, "graphs": 11, "distinct_polys": 11, "with_mate": 0,
                               "fraction": "0/1", "fraction_decimal": "0.000000000",
                               "max_family": 1, "families": []}


def test_decode_stream_and_poly(capsys):
    code, out, _ = run(capsys, "decode", str(corpus_path(2)))
    rows = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and [r["m"] for r in rows] == [0, 1]
    code, out, _ = run(capsys, "decode", "--poly", "x^3 - 6*a*x^2 + (9*a^2 + 6*a - 3)*x"
                                                     " - (18*a^2 - 12*a + 2)")
    assert json.loads(out) == {"n": 3, "m": 3, "sum_d2": 12, "sum_d3": 24, "triangles": 1,
                               "regular": True}


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", str(corpus_path(4)), "--format", "json")
    summary = json.loads(out)
    assert code == 0 and summary["ok"] and summary["graphs"] == 11
    assert summary["identities"]["loop_expansion"] == {"pass": 11, "fail": 0, "skipped": 0}


def test_verify_failure_exits_2(capsys, monkeypatch):
    import aalpha.verify as verify
    real = verify.check_graph
    monkeypatch.setattr(verify, "check_graph",
                        lambda g, *a: {**real(g, *a), "first_four": g.edge_count != 1})
    code, out, err = run(capsys, "verify", str(corpus_path(2)))
    assert code == 2 and "FAILED" in out and "FAIL first_four A_" in err


def test_module_entry_point_reads_stdin():
    data = corpus_path(3).read_bytes()
    proc = subprocess.run([sys.executable, "-m", "aalpha", "census"], input=data,
                          capture_output=True, check=True)
    assert proc.stdout == b"3\t4\t4\t0\t0.000000000\t1\n"
