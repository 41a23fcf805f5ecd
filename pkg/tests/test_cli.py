import io
import json

import pytest

from ratgenus.atlas import generate_atlas, parse_records
from ratgenus.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_dinv():
    code, text = run("dinv", "2", "1")
    assert code == 0
    assert text.strip() == '{"p":2,"q":1,"d":["1/4","-1/4"]}'


def test_dinv_normalizes_input():
    code, text = run("dinv", "5", "7")
    assert json.loads(text)["q"] == 2


def test_theta():
    code, text = run("theta", "5", "1", "2")
    doc = json.loads(text)
    assert code == 0
    assert doc["theta_lb"] == "1/5" and doc["maximizers"] == [3] and doc["exact"] is False


def test_simple():
    code, text = run("simple", "5", "1", "2")
    doc = json.loads(text)
    assert (doc["chi"], doc["rational_norm"], doc["theta"], doc["fibered"]) == (-1, "1/10", "1/5", True)


def test_surgery_knot():
    code, text = run("surgery", "--knot", "T(2,3)", "--p", "2")
    doc = json.loads(text)
    assert code == 0
    assert doc["dual_bound"] == "1/2" and doc["minimizer"] is True
    assert doc["d"] == ["-7/4", "-1/4"]


def test_surgery_alex():
    code, text = run("surgery", "--alex", "1,-1,0,1,0,-1,1", "--p", "6")
    doc = json.loads(text)
    assert doc["dual_bound"] == "5/6" and doc["attained_at"] == [2]


def test_atlas_to_file(tmp_path):
    for fmt in ("json", "csv"):
        path = tmp_path / f"atlas.{fmt}"
        code, _ = run("atlas", "--pmax", "5", "--out", str(path), "--format", fmt, "--jobs", "1")
        assert code == 0
        assert parse_records(path.read_bytes(), fmt) == generate_atlas(5)


def test_verify():
    code, text = run("verify", "--pmax", "12")
    doc = json.loads(text)
    assert code == 0 and doc["passed"]


def test_verify_failure_exit_code(monkeypatch):
    import ratgenus.oracle as oracle

    monkeypatch.setattr(oracle, "d_lens", lambda L, i: 0)
    code, text = run("verify", "--pmax", "3")
    assert code == 2
    assert json.loads(text)["passed"] is False


@pytest.mark.parametrize(
    "argv",
    [("dinv", "4", "2"), ("dinv", "0", "1"), ("simple", "5", "1", "0"), ("surgery", "--knot", "T(2,4)", "--p", "3"),
     ("surgery", "--alex=-1,3,-1", "--p", "3"), ("surgery", "--alex", "1,2", "--p", "3")],
)
def test_domain_errors_exit_1(argv, capsys):
    if argv[0] == "simple":
        # Degenerate class is reported, not an error.
        assert run(*argv)[0] == 0
        return
    assert run(*argv)[0] == 1
    assert "ratgenus:" in capsys.readouterr().err


def test_invariant_violation_exit_3():
    assert run("surgery", "--alex", "1,-2,3,-2,1", "--p", "3")[0] == 3


@pytest.mark.parametrize(
    "argv",
    [(), ("bogus",), ("dinv", "2"), ("dinv", "x", "1"), ("atlas",), ("atlas", "--pmax", "1"),
     ("atlas", "--pmax", "5", "--format", "xml"), ("surgery", "--p", "3"), ("verify", "--pmax", "0"),
     ("surgery", "--knot", "T(2,3)", "--alex", "1", "--p", "2")],
)
def test_usage_errors_exit_64(argv, capsys):
    assert run(*argv)[0] == 64
    assert capsys.readouterr().err
