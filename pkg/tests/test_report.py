import json
from fractions import Fraction

import pytest

from bcnil.errors import InputError, WitnessInvalid
from bcnil.report import ENV_VAR, evaluate_condition, load_witnesses, report
from bcnil.structures import CATALOG


def test_h4_scope():
    rows = report("h4")
    assert [r.computed for r in rows] == [(2, 1, 4, 6, 3, 6, 3), (2, 1, 5, 6, 2, 6, 3),
                                          (2, 1, 4, 6, 2, 6, 3), (2, 1, 4, 6, 2, 7, 3)]
    assert [r.index for r in rows] == [1, 2, 3, 4]


def test_h19_scope():
    rows = report("h19-")
    assert len(rows) == 1 and rows[0].computed == (1, 1, 2, 3, 2, 4, 2)


def test_table1_h6():
    (row,) = [r for r in report("table1") if r.algebra == "h6"]
    assert row.balanced_exists is True and row.computed == (2, 2, 5, 6, 2, 6, 3)


def test_h7_flag():
    (row,) = report("h7")
    assert row.flags == {"lie_algebra_level_only": True}
    assert row.to_json()["flags"]["lie_algebra_level_only"] is True


def test_all_rows_once():
    rows = load_witnesses()
    appendix = [r for r in rows if r.table == "appendix"]
    assert len(appendix) == 53
    keys = [(r.algebra, r.index) for r in appendix]
    assert len(set(keys)) == len(keys)
    assert sum(1 for r in appendix if r.algebra == "h5") == 16
    assert {r.algebra for r in appendix} == set(CATALOG) - {"h1"}


def test_ordering():
    order = list(CATALOG)
    rows = load_witnesses()
    keys = [(r.table, order.index(r.algebra), r.index) for r in rows]
    assert keys == sorted(keys)


def test_unknown_scope():
    with pytest.raises(InputError):
        report("h99")


def test_mismatch_reported_per_cell(tmp_path, monkeypatch):
    data = json.loads(open(load_witnesses.__globals__["_default_path"]()).read())
    row = next(r for r in data["rows"] if r["algebra"] == "h4")
    row["expected"] = [2, 1, 4, 6, 3, 6, 9]
    p = tmp_path / "w.json"
    p.write_text(json.dumps(data))
    monkeypatch.setenv(ENV_VAR, str(p))
    bad = report("h4")[0]
    assert not bad.match
    assert bad.mismatches == [{"witness": row["witness"], "cell": "h32", "expected": 9, "computed": 3}]


def _write(tmp_path, rows):
    p = tmp_path / "w.json"
    p.write_text(json.dumps({"version": 1, "rows": rows}))
    return str(p)


H4 = {"table": "appendix", "algebra": "h4", "family": "I", "condition": "rho == 0 and lam == 1 and x == 1/4",
      "witness": {"rho": "0", "lambda": "1", "D": "1/4"}, "expected": [2, 1, 4, 6, 3, 6, 3]}


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, _write(tmp_path, [H4]))
    assert [r.computed for r in report("all")] == [(2, 1, 4, 6, 3, 6, 3)]


@pytest.mark.parametrize("change", [
    {"condition": "rho == 1"},
    {"algebra": "h42"},
    {"expected": [1, 2]},
    {"family": "IV"},
    {"witness": {"rho": "0", "lambda": "1", "D": "1+i"}},
    {"condition": "__import__('os')"},
    {"condition": "rho ** (1/2) == 0"},
    {"alsoHolds": [{"rho": "1", "lambda": "1", "D": "1/4"}]},
    {"extra": 1},
])
def test_invalid_witness(tmp_path, monkeypatch, change):
    monkeypatch.setenv(ENV_VAR, _write(tmp_path, [{**H4, **change}]))
    with pytest.raises(WitnessInvalid):
        load_witnesses()


def test_unreadable_witness_file(tmp_path):
    with pytest.raises(InputError):
        load_witnesses(str(tmp_path / "nope.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(InputError):
        load_witnesses(str(bad))


def test_condition_evaluator():
    env = {"x": Fraction(-1, 8), "lam": Fraction(1, 2)}
    assert evaluate_condition("-1/4 < x < 0 and lam**2 == 1/4", env)
    assert not evaluate_condition("not (x < 0) or lam > 1", env)
    assert evaluate_condition("x != 0", env)
    for bad in ["open('f')", "x.real", "[1][0]", "y > 0", "lam ** lam", "1.5 > 0", "'a' == 'a'"]:
        with pytest.raises(ValueError):
            evaluate_condition(bad, env)
