from __future__ import annotations

import json

import pytest

from cftorsion.cli import main

G2 = "x^6 - 4*x^5 + 24*x^4 - 74*x^3 + 168*x^2 - 308*x + 257"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", G2)
    assert code == 0
    assert "m: 7" in out and "kappa: 2" in out


def test_order(capsys):
    assert run(capsys, "order", G2, "--genus", "2")[1].strip() == "11"


def test_order_input_error(capsys):
    code, _, err = run(capsys, "order", "x^5 + 1", "--genus", "2")
    assert code == 2 and "OddDegree" in err


def test_partitions(capsys):
    out = run(capsys, "partitions", "--genus", "2", "--order", "11")[1]
    assert out.splitlines()[1] == "m=6 (2,1,2,1,2)"
    assert len(out.splitlines()) == 7


def test_solve_and_instantiate(capsys, tmp_path):
    trace = tmp_path / "trace.json"
    code, out, _ = run(capsys, "solve", "--genus", "2", "--order", "11", "--partition", "2,1,1,1,1,2",
                       "--save", str(trace))
    assert code == 0 and "verdict: FAMILY" in out
    code, out, _ = run(capsys, "instantiate", "--trace", str(trace), "--assign", "l2=-2,l1=1/16,k3=0,kappa=2")
    assert code == 0
    assert out.splitlines()[0] == f"f = {G2}"


def test_igusa(capsys):
    out = run(capsys, "igusa", "x^6 + 2*x^5 + 5*x^4 + 2*x^3 + 2*x^2 + 1")[1]
    assert "A: -376" in out and "D: -1445888" in out


def test_distinguish(capsys):
    out = run(capsys, "distinguish", "flynn", "flynn")[1]
    assert out.startswith("verdict: OVERLAP")
    out = run(capsys, "distinguish", "flynn", "x^6 + (u+1)*x^5 + u*x^2 + 3*u^2 + 1")[1]
    assert out.startswith("verdict: DISJOINT")


def test_search(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"g": 2, "N": 11, "partition": [2, 1, 2, 1, 2]}))
    out = run(capsys, "search", "--config", str(cfg), "--catalog", str(tmp_path / "c.jsonl"))[1]
    assert "impossible" in out and "digest" in out


def test_usage_error():
    with pytest.raises(SystemExit):
        main(["solve"])


def test_fixtures_report_every_case(capsys):
    code, out, _ = run(capsys, "fixtures")
    lines = out.splitlines()
    assert len(lines) == 8
    assert all(line.startswith(("PASS ", "FAIL ")) for line in lines)
    assert code == (0 if all(line.startswith("PASS") for line in lines) else 1)
