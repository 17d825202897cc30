import os
from pathlib import Path

import pytest

import fext

SCENARIOS = Path(os.environ.get("FEXT_SCENARIOS", Path(__file__).resolve().parents[2] / "scenarios"))


def test_functions():
    f = fext.Fn("pair(x, x + 1)")
    assert f(3) == 32  # (3 + 4)(3 + 5)/2 + 4
    assert str(fext.Fn("p1(x)").compose(f)) == "p1(pair(x, x + 1))"
    assert fext.Fn("p1(x)").compose(f)(10) == 10
    # big values stay exact
    assert fext.Fn("x * x * x * x")(10**6) == 10**24
    with pytest.raises(fext.SyntaxError):
        fext.Fn("x +")


def test_model():
    m = fext.Model(fext.Oracle(horizon=2000))
    omega = fext.Point.omega()
    assert m.eq(omega.star(fext.Fn("x + 1")), fext.Point("n + 1"))
    assert not m.eq(omega, fext.Point.standard(3))
    assert m.standard_part(fext.Point("n mod 1")) == 0
    assert m.standard_part(omega) is None
    evens = fext.Fn("ifeq(x mod 2, 0, 1, 0)")
    odds = fext.Fn("ifeq(x mod 2, 1, 1, 0)")
    assert m.member(omega, evens) != m.member(omega, odds)
    assert m.member(fext.Point.standard(4), evens)


def test_transfer():
    assert fext.eval_base("exists y < x . y + y = x", {"x": 10})
    m = fext.Model(fext.Oracle())
    assert m.eval("forall y < x . y < x + 1", {"x": fext.Point.omega()})
    assert m.eval("x = 7", {"x": fext.Point.standard(7)})


def test_run_and_replay(tmp_path):
    first = fext.run(SCENARIOS / "broken_diag.scn", out=tmp_path / "a")
    assert first["exit_code"] == 1
    assert "toy-diag\t" in first["report"]
    again = fext.run(SCENARIOS / "broken_diag.scn", replay=tmp_path / "a" / "decisions.log", out=tmp_path / "b")
    assert again["report"] == first["report"]
    assert (tmp_path / "b" / "report.txt").read_bytes() == (tmp_path / "a" / "report.txt").read_bytes()


def test_run_reports_parse_errors(tmp_path):
    bad = tmp_path / "bad.scn"
    bad.write_text("[points]\nw = n +\n")
    r = fext.run(bad)
    assert r["exit_code"] == 2
    assert ":2:" in r["error"]
