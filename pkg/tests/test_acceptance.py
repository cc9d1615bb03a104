"""Acceptance criteria 1-7, one PASS/FAIL line each.  Every comparison is exact."""
from itertools import product

import pytest

from bcnil.algebra import I, omega
from bcnil.cohomology import aeppli, bott_chern, dimension_table, dolbeault, froelicher
from bcnil.deformations import curve_at, sweep
from bcnil.hermitian import (HermitianMetric, balanced_family_i_metrics, classify_metric, harmonic_bc, l22)
from bcnil.invariants import f_invariant, k_invariant, relation_certificate
from bcnil.report import load_witnesses, report
from bcnil.structures import family_i, family_ii, family_iii, iwasawa, parallelizable

from conftest import CATALOG_STRUCTURES
from random_structures import COUNT, random_structures, reference

BIDEGREES = [(p, q) for p in range(4) for q in range(4)]


def verdict(capsys, number, title, failures, detail=""):
    line = f"{'FAIL' if failures else 'PASS'} criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    with capsys.disabled():
        print("\n" + line)
        for f in failures[:10]:
            print(f"    {f}")
    assert not failures, line


def test_criterion_1_appendix(capsys):
    rows = report("all")
    failures = [f"{r.algebra} row {r.index}: {m}" for r in rows for m in r.mismatches]
    families = {r.family for r in rows}
    h5 = sum(r.algebra == "h5" for r in rows)
    if families != {"I", "II", "III"}:
        failures.append(f"families covered: {sorted(families)}")
    for label in ("h19-", "h26+"):
        if not any(r.algebra == label for r in rows):
            failures.append(f"missing {label}")
    verdict(capsys, 1, "classification Bott-Chern tables reproduced", failures,
            f"{len(rows)} rows, {h5} h5 rows, {sum(map(len, (r.also_holds for r in load_witnesses())))} extra witnesses")


def test_criterion_2_table1(capsys):
    rows = report("table1")
    failures = [f"{r.algebra} row {r.index}: {m}" for r in rows for m in r.mismatches]
    for row in load_witnesses():
        if row.table != "table1":
            continue
        s = row.structure()
        metrics = balanced_family_i_metrics(s, 1)
        if not metrics or not classify_metric(s, metrics[0]).balanced:
            failures.append(f"{row.algebra} row {row.index}: no balanced metric")
    verdict(capsys, 2, "balanced-structure table: metrics and dimensions", failures, f"{len(rows)} rows")


def _family_iii_lists(sign):
    middle = omega("13", "3") + omega("12", "2", -I * sign)
    return {
        (1, 0): [omega("1")], (2, 0): [omega("12")], (3, 0): [omega("123")],
        (1, 1): [omega("1", "1"), omega("1", "2") - omega("2", "1")],
        (2, 1): [omega("13", "1"), omega("12", "3"), middle],
        (2, 2): [omega("12", "13"), omega("13", "12"), omega("13", "23") + omega("23", "13"), omega("23", "23")],
        (3, 1): [omega("123", "1"), omega("123", "3")],
        (3, 2): [omega("123", "12"), omega("123", "23")],
        (3, 3): [omega("123", "123")],
    }


IWASAWA_LISTS = {
    (2, 2): [omega(a, b) for a, b in product(("12", "13", "23"), repeat=2) if (a, b) != ("12", "12")],
    (3, 0): [omega("123")],
    (3, 3): [omega("123", "123")],
}


def test_criterion_3_generators(capsys):
    cases = [("familyIII(0,+1)", family_iii(0, 1), _family_iii_lists(1)),
             ("familyIII(0,-1)", family_iii(0, -1), _family_iii_lists(-1)),
             ("iwasawa", iwasawa(), IWASAWA_LISTS)]
    failures, checked = [], 0
    for name, s, lists in cases:
        for (p, q), gens in lists.items():
            # the listed groups and, up to conjugation, their mirror images
            for (a, b), forms in (((p, q), gens), ((q, p), [g.conjugate() for g in gens])):
                grp = bott_chern(s, a, b)
                checked += 1
                if grp.dimension != len(forms) or not grp.spans_same_classes(forms):
                    failures.append(f"{name} H^{a},{b}: listed span differs from the computed classes")
    verdict(capsys, 3, "generator lists equal modulo the ∂∂̄ image", failures, f"{checked} groups")


def test_criterion_4_invariants(capsys):
    failures = []

    def expect(label, got, want):
        if got != want:
            failures.append(f"{label}: got {got}, expected {want}")

    s0 = family_i(0, 1, "1/4")
    expect("f2 familyI(0,1,1/4)", f_invariant(s0, 2), 2)
    expect("k1 familyI(0,1,1/4)", k_invariant(s0, 1), 2)
    sa = curve_at("h4Abelian", "1/4")
    expect("f2 at a=1/4", f_invariant(sa, 2), 0)
    expect("k1 at a=1/4", k_invariant(sa, 1), 0)
    walls = sweep("h4Abelian", ["1/5", "1/4", "3/10", "1/3", "7/20", "1/2"], ["bc11"])
    expect("h11 along the curve", walls.column("bc11"), [4, 4, 4, 5, 4, 4])
    expect("k triple h15 (1,1,3)", tuple(k_invariant(family_ii(1, 1, 3), r) for r in (1, 2, 3)), (4, 4, 2))
    h15 = [r for r in load_witnesses() if r.table == "appendix" and r.algebra == "h15"]
    triples = {tuple(k_invariant(r.structure(), k) for k in (1, 2, 3)) for r in h15}
    if (3, 1, 1) not in triples:
        failures.append(f"no h15 witness with k triple (3,1,1): {sorted(triples)}")
    for rho in (0, 1):
        expect(f"k_r parallelizable({rho})", [k_invariant(parallelizable(rho), r) for r in (1, 2, 3, 4)], [0] * 4)
    verdict(capsys, 4, "f_2, k_r and the h_{1,1} wall", failures)


def test_criterion_5_moduli(capsys):
    failures = []
    for t2 in (1, 2, "1/3"):
        d = l22(iwasawa(), HermitianMetric.iwasawa(t2)).dimension
        if d != 7:
            failures.append(f"iwasawa t²={t2}: {d}")
    lam_zero = [family_i(0, 0, -1), family_i(1, 0, "-1/8"), family_i(1, 0, "-1/16")]
    table1 = [r.structure() for r in load_witnesses() if r.table == "table1"]
    for s in lam_zero + table1:
        want = 6 if s.provenance["lambda"] == 0 else 5
        metrics = balanced_family_i_metrics(s, 3)
        if len(metrics) != 3:
            failures.append(f"{s.provenance}: only {len(metrics)} metrics")
        for m in metrics:
            d = l22(s, m).dimension
            if d != want:
                failures.append(f"{s.provenance}: {d}, expected {want}")
    h19 = family_iii(0)
    for args in [(1, 1, 1, 0), (2, 3, 1, 0), (1, 2, 1, 1), (3, 2, 2, 1)]:
        d = l22(h19, HermitianMetric.balanced_family_iii(h19, *args)).dimension
        if d != 3:
            failures.append(f"h19- metric {args}: {d}")
    col = sweep("iwasawa", ["0", "1/2"], ["l22"]).column("l22")
    if col != [7, 5]:
        failures.append(f"iwasawa sweep: {col}")
    verdict(capsys, 5, "dimensions of L^{2,2}", failures,
            f"{len(table1)} balanced-table witnesses, {len(lam_zero)} λ=0 points")


SAMPLE_H = [((1, 0, 0), (0, 1, 0), (0, 0, 1)),
            ((2, "1+1i", 0), ("1-1i", 2, "1/2"), (0, "1/2", 1))]


def _properties(s):
    out = []
    bc, ae, dolb = (dimension_table(s, t) for t in ("bottChern", "aeppli", "dolbeault"))
    betti = s.betti_numbers()
    for p, q in BIDEGREES:
        if ae[p][q] != bc[3 - q][3 - p]:
            out.append(f"duality at {(p, q)}")
        if bc[p][q] != bc[q][p] or ae[p][q] != ae[q][p]:
            out.append(f"conjugation at {(p, q)}")
        if froelicher(s, 1, p, q).dimension != dolb[p][q]:
            out.append(f"E_1 ≠ Dolbeault at {(p, q)}")
        e4, e5 = froelicher(s, 4, p, q).dimension, froelicher(s, 5, p, q).dimension
        if e4 != e5:
            out.append(f"E_4 ≠ E_5 at {(p, q)}")
    for k in range(7):
        total = sum(froelicher(s, 4, p, k - p).dimension for p in range(4) if 0 <= k - p <= 3)
        if total != betti[k]:
            out.append(f"Σ E_∞ ≠ b_{k}")
    f = [f_invariant(s, k) for k in range(7)]
    if min(f) < 0 or f != f[::-1]:
        out.append(f"f_k = {f}")
    k = [k_invariant(s, r) for r in (1, 2, 3, 4)]
    if not k[0] >= k[1] >= k[2] == k[3]:
        out.append(f"k_r = {k}")
    if any(bc[p][0] < 1 for p in range(4)):
        out.append("h_{p,0} = 0")
    for r in (1, 2, 3):
        if relation_certificate(s, r).alternating_sum != 0:
            out.append(f"certificate r={r}")
    for H in SAMPLE_H:
        m = HermitianMetric(H)
        for p, q in ((1, 1), (2, 1), (2, 2)):
            if harmonic_bc(s, m, p, q).dim != bc[p][q]:
                out.append(f"harmonic ≠ BC at {(p, q)}")
        c = classify_metric(s, m)
        if not c.gauduchon:
            out.append("metric not Gauduchon")
        if s.classify() == "abelian" and c.strongly_gauduchon != c.balanced:
            out.append("abelian: sG ≠ balanced")
    return out


def _scale_invariance():
    out = []
    cases = [(iwasawa(), HermitianMetric.iwasawa(3)), (family_iii(0), None)]
    cases[1] = (cases[1][0], HermitianMetric.balanced_family_iii(cases[1][0], 1, 2, 1, 1))
    for row in load_witnesses():
        if row.table == "table1":
            s = row.structure()
            cases.append((s, balanced_family_i_metrics(s, 1)[0]))
    for s, m in cases:
        if l22(s, m).subspace != l22(s, m.scaled(2)).subspace:
            out.append(f"L22 not scale invariant for {s.provenance}")
    return out


def test_criterion_6_properties(capsys):
    failures = []
    for name, s in CATALOG_STRUCTURES:
        failures += [f"{name}: {msg}" for msg in _properties(s)]
    failures += _scale_invariance()
    verdict(capsys, 6, "property suite over the catalog", failures, f"{len(CATALOG_STRUCTURES)} structures")


def test_criterion_7_oracle(capsys):
    failures = []
    engines = {"bottChern": bott_chern, "aeppli": aeppli, "dolbeault": dolbeault}
    for i, s in enumerate(random_structures()):
        ref = reference(i)
        for theory, fn in engines.items():
            for pq, want in ref[theory].items():
                got = fn(s, *pq).dimension
                if got != want:
                    failures.append(f"structure {i} {theory}{pq}: {got} vs {want}")
        if s.betti_numbers() != ref["deRham"]:
            failures.append(f"structure {i} de Rham: {s.betti_numbers()} vs {ref['deRham']}")
    verdict(capsys, 7, "random structures agree with the brute-force oracle", failures,
            f"{COUNT} structures, four theories")
