from fractions import Fraction

import pytest

from bcnil.algebra import GaussianRational
from bcnil.cohomology import bott_chern, dolbeault
from bcnil.errors import InputError, OutOfDomain
from bcnil.hermitian import balanced_family_i_metrics, classify_metric, l22
from bcnil.deformations import curve_at, transported_metric, sweep

SAMPLES = ["1/8", "1/5", "1/4", "1/2", "2/3", "9/10"]


def test_curve_endpoints():
    s = curve_at("h4Abelian", 0)
    assert s.provenance["family"] == "I" and s.classify() == "abelian"
    assert curve_at("iwasawa", 0).provenance["family"] == "parallelizable"


@pytest.mark.parametrize("a,D", [("1/3", -2), ("1/4", Fraction(-15, 4)), ("1/2", Fraction(-3, 4))])
def test_h4_curve_coefficient(a, D):
    assert curve_at("h4Abelian", a).provenance["D"] == GaussianRational(D)


def test_iwasawa_curve():
    p = curve_at("iwasawa", "1/2").provenance
    assert (p["rho"], p["lambda"], p["D"]) == (1, Fraction(1, 2), 0)


@pytest.mark.parametrize("a", ["1", "-1/2", "3/2", "1/2i"])
def test_out_of_domain(a):
    with pytest.raises(OutOfDomain):
        curve_at("iwasawa", a)


def test_unknown_curve():
    with pytest.raises(InputError):
        curve_at("h7", 0)
    with pytest.raises(InputError):
        sweep("h7", [0], ["f2"])
    with pytest.raises(InputError):
        sweep("iwasawa", [0], ["nonsense"])
    with pytest.raises(InputError):
        sweep("iwasawa", [0], ["f2"], metric_rule="nope")


def test_h4_sweep_f2_k1():
    t = sweep("h4Abelian", ["0", "1/4", "1/3"], ["f2", "k1", "bc11"])
    assert t.column("f2")[:2] == [2, 0]
    assert t.column("k1")[:2] == [2, 0]
    assert t.column("bc11") == [4, 4, 5]
    assert t.rows[2].on_wall and not t.rows[1].on_wall
    # at the wall f_2 is still recomputed from the actual dimensions
    assert t.column("f2")[2] == 1


def test_h4_properties_along_curve():
    for a in SAMPLES:
        s = curve_at("h4Abelian", a)
        assert bott_chern(s, 3, 1).dimension == 2
        assert bott_chern(s, 1, 1).dimension == (5 if a == "1/3" else 4)
        assert dolbeault(s, 0, 2).dimension == 2
    s0 = curve_at("h4Abelian", 0)
    assert bott_chern(s0, 3, 1).dimension == 3 and dolbeault(s0, 0, 2).dimension == 3


def test_iwasawa_l22_sweep():
    t = sweep("iwasawa", ["0", "1/2"], ["l22"])
    assert t.column("l22") == [7, 5]
    assert sweep("iwasawa", ["0", "1/2"], ["l22"], metric_rule="vertex").column("l22") == [7, 5]


def test_iwasawa_curve_admits_balanced():
    for a in SAMPLES:
        s = curve_at("iwasawa", a)
        metrics = balanced_family_i_metrics(s, 1)
        assert metrics and classify_metric(s, metrics[0]).balanced
        m = transported_metric(a, 2)
        assert classify_metric(s, m).balanced
        assert l22(s, m).dimension == 5


def test_failed_sample_does_not_abort():
    t = sweep("h4Abelian", ["1", "1/4"], ["f2", "l22"])
    assert not t.rows[0].ok and t.rows[0].error.code == "OUT_OF_DOMAIN"
    assert t.rows[1].values["f2"] == 0
    js = t.to_json()
    assert js["rows"][0]["error"]["code"] == "OUT_OF_DOMAIN"


def test_h4_vertex_rule_without_balanced_metric():
    row = sweep("h4Abelian", ["0"], ["l22"]).rows[0]
    assert row.error.code == "CONSTRAINT_VIOLATION"


def test_parallel_matches_serial():
    qs = ["bcdims", "f2", "k1", "classify", "b2", "aeppli12"]
    a = sweep("h4Abelian", SAMPLES, qs)
    b = sweep("h4Abelian", SAMPLES, qs, workers=4)
    assert a.to_json() == b.to_json()
