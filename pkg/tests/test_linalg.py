from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bcnil.algebra import GaussianRational as G
from bcnil.linalg import LinearMap, Subspace, nullspace, qdim, rref, stack


def vec(*xs):
    return [G.coerce(x) for x in xs]


entries = st.integers(-3, 3).map(G)
matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=1, max_size=5))


def test_rref_basic():
    rows, pivots = rref([vec(1, 2, 3), vec(2, 4, 6), vec(0, 1, 1)], 3)
    assert pivots == [0, 1]
    assert rows == [vec(1, 0, 1), vec(0, 1, 1)]


def test_complex_rank():
    # (1, i) and (i, -1) are proportional over C
    s = Subspace.span("A", 2, [vec(1, G(0, 1)), [G(0, 1), G(-1)]])
    assert s.dim == 1


def test_intersection_and_sum():
    a = Subspace.coordinate("A", 4, [0, 1])
    b = Subspace.span("A", 4, [vec(1, 0, 1, 0), vec(0, 1, 0, 0)])
    assert (a & b).dim == 1
    assert (a + b).dim == 3
    assert (a & b).contains(vec(0, 1, 0, 0))


def test_ambient_mismatch():
    from bcnil.errors import AmbientMismatch
    with pytest.raises(AmbientMismatch):
        Subspace.full("A", 2) + Subspace.full("B", 2)


def test_qdim_requires_containment():
    big = Subspace.coordinate("A", 3, [0])
    small = Subspace.coordinate("A", 3, [1])
    with pytest.raises(AssertionError):
        qdim(big, small)
    assert qdim(Subspace.full("A", 3), small) == 2


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity(rows):
    n = len(rows[0])
    cols = [[r[j] for r in rows] for j in range(n)]
    m = LinearMap.from_columns("X", "Y", len(rows), cols)
    assert m.rank + m.kernel().dim == n
    for v in m.kernel().basis:
        assert all(not x for x in m.apply(v))
    assert len(nullspace(rows, n)) == m.kernel().dim


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_preimage_of_image_contains_kernel(rows):
    n = len(rows[0])
    m = LinearMap.from_columns("X", "Y", len(rows), [[r[j] for r in rows] for j in range(n)])
    assert m.preimage(m.image()) == Subspace.full("X", n)
    assert m.preimage(Subspace.zero("Y", len(rows))) == m.kernel()


def test_compose_and_stack():
    a = LinearMap.from_columns("X", "Y", 2, [vec(1, 0), vec(1, 1)])
    b = LinearMap.from_columns("Y", "Z", 1, [vec(1), vec(-1)])
    ba = b.compose(a)
    assert list(ba.apply(vec(1, 0))) == vec(1)
    assert list(ba.apply(vec(0, 1))) == vec(0)
    both = stack("X", [a, ba])
    assert both.kernel().dim == 0


def test_complement_lift():
    big = Subspace.full("A", 3)
    small = Subspace.span("A", 3, [vec(1, 1, 0)])
    lifts = small.complement_in(big)
    assert len(lifts) == 2
    assert (small + Subspace.span("A", 3, lifts)).dim == 3


def test_fraction_entries_exact():
    s = Subspace.span("A", 2, [[G(Fraction(1, 3)), G(Fraction(2, 7))]])
    assert s.contains([G(7), G(6)])
