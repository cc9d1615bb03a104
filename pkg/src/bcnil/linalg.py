"""Exact subspace calculus over the Gaussian rationals.

Vectors are tuples of :class:`GaussianRational`.  A :class:`Subspace` keeps its basis in
reduced row echelon form (one basis vector per row), which is unique, so two subspaces
are equal exactly when their basis tuples are equal.  Quotients are never built; callers
get dimensions and representative lifts instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, List, Sequence, Tuple

from .algebra import ZERO, ONE, GaussianRational
from .errors import AmbientMismatch

Vector = Tuple[GaussianRational, ...]


def rref(rows: Sequence[Sequence[GaussianRational]], ncols: int) -> Tuple[List[List[GaussianRational]], List[int]]:
    """Reduced row echelon form of ``rows``; returns (nonzero rows, pivot columns)."""
    # rows are sparse in practice, so eliminate on {column: entry} dicts
    m = [d for d in ({j: x for j, x in enumerate(r) if x} for r in rows) if d]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pr = next((i for i in range(r, len(m)) if c in m[i]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        if piv != ONE:
            inv = ONE / piv
            m[r] = {j: x * inv for j, x in m[r].items()}
        row = m[r]
        for i in range(len(m)):
            if i != r and c in m[i]:
                target = m[i]
                f = target[c]
                for j, b in row.items():
                    v = target.get(j, ZERO) - f * b
                    if v:
                        target[j] = v
                    else:
                        del target[j]
        pivots.append(c)
        r += 1
    dense = []
    for d in m[:r]:
        vec = [ZERO] * ncols
        for j, x in d.items():
            vec[j] = x
        dense.append(vec)
    return dense, pivots


@dataclass(frozen=True)
class Subspace:
    """Subspace of a labelled ambient space of dimension ``n``."""

    ambient: Hashable
    n: int
    basis: Tuple[Vector, ...] = ()
    pivots: Tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def span(cls, ambient: Hashable, n: int, vectors: Sequence[Sequence[GaussianRational]]) -> "Subspace":
        for v in vectors:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in ambient of dimension {n}")
        rows, piv = rref(vectors, n)
        return cls(ambient, n, tuple(tuple(r) for r in rows), tuple(piv))

    @classmethod
    def zero(cls, ambient: Hashable, n: int) -> "Subspace":
        return cls(ambient, n)

    @classmethod
    def full(cls, ambient: Hashable, n: int) -> "Subspace":
        return cls.coordinate(ambient, n, range(n))

    @classmethod
    def coordinate(cls, ambient: Hashable, n: int, indices) -> "Subspace":
        idx = sorted(set(indices))
        rows = tuple(tuple(ONE if j == i else ZERO for j in range(n)) for i in idx)
        return cls(ambient, n, rows, tuple(idx))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient or self.n != other.n:
            raise AmbientMismatch(f"{self.ambient!r} (dim {self.n}) vs {other.ambient!r} (dim {other.n})")

    def reduce(self, v: Sequence[GaussianRational]) -> List[GaussianRational]:
        """Remainder of ``v`` after clearing this subspace's pivot columns."""
        v = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence[GaussianRational]) -> bool:
        return not any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.ambient, self.n, list(self.basis) + list(other.basis))

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersection(self, other)

    def annihilator(self) -> List[List[GaussianRational]]:
        """Rows ``w`` with ``sum(w_i v_i) = 0`` for every ``v`` here (bilinear pairing)."""
        return nullspace(self.basis, self.n)

    def complement_in(self, bigger: "Subspace") -> List[Vector]:
        """Lifts of a basis of ``bigger / self``, chosen by echelon pivots.

        Takes the echelon rows of ``bigger`` whose pivots are not pivots of ``self`` and
        reduces them modulo ``self``; deterministic for a given pair of subspaces.
        """
        self._check(bigger)
        if not bigger.contains_subspace(self):
            raise ValueError("quotient requested for a non-nested pair of subspaces")
        mine = set(self.pivots)
        return [tuple(self.reduce(row)) for row, c in zip(bigger.basis, bigger.pivots) if c not in mine]


def qdim(bigger: Subspace, smaller: Subspace) -> int:
    """``dim bigger - dim smaller`` after checking ``smaller ⊆ bigger``."""
    if not bigger.contains_subspace(smaller):
        raise AssertionError(f"quotient of {bigger.ambient!r}: denominator not contained in numerator")
    return bigger.dim - smaller.dim


def nullspace(rows: Sequence[Sequence[GaussianRational]], ncols: int) -> List[List[GaussianRational]]:
    """Basis of ``{x : rows · x = 0}``, one vector per free column."""
    red, piv = rref(rows, ncols)
    pivset = set(piv)
    out = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [ZERO] * ncols
        x[free] = ONE
        for row, c in zip(red, piv):
            if row[free]:
                x[c] = -row[free]
        out.append(x)
    return out


@dataclass(frozen=True)
class LinearMap:
    """Matrix of a linear map in fixed bases; ``rows`` has shape (dim codomain, dim domain)."""

    domain: Hashable
    codomain: Hashable
    n_in: int
    n_out: int
    rows: Tuple[Vector, ...]

    @classmethod
    def from_columns(cls, domain, codomain, n_out: int, columns: Sequence[Sequence[GaussianRational]]) -> "LinearMap":
        n_in = len(columns)
        rows = tuple(tuple(columns[j][i] for j in range(n_in)) for i in range(n_out))
        return cls(domain, codomain, n_in, n_out, rows)

    @classmethod
    def zero(cls, domain, codomain, n_in: int, n_out: int) -> "LinearMap":
        return cls(domain, codomain, n_in, n_out, tuple(tuple(ZERO for _ in range(n_in)) for _ in range(n_out)))

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.n_in)]

    @cached_property
    def _sparse_rows(self) -> Tuple[Tuple[Tuple[int, GaussianRational], ...], ...]:
        return tuple(tuple((j, a) for j, a in enumerate(r) if a) for r in self.rows)

    def apply(self, v: Sequence[GaussianRational]) -> Vector:
        if len(v) != self.n_in:
            raise ValueError("vector length does not match map domain")
        out = []
        for r in self._sparse_rows:
            acc = ZERO
            for j, a in r:
                b = v[j]
                if b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def compose(self, first: "LinearMap") -> "LinearMap":
        """``self ∘ first``."""
        if first.codomain != self.domain or first.n_out != self.n_in:
            raise AmbientMismatch(f"cannot compose {self.domain!r} with {first.codomain!r}")
        cols = [self.apply(first.column(j)) for j in range(first.n_in)]
        return LinearMap.from_columns(first.domain, self.codomain, self.n_out, cols)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise AmbientMismatch("sum of maps between different spaces")
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return LinearMap(self.domain, self.codomain, self.n_in, self.n_out, rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def kernel(self) -> Subspace:
        return Subspace.span(self.domain, self.n_in, nullspace(self.rows, self.n_in))

    def image(self) -> Subspace:
        return Subspace.span(self.codomain, self.n_out, self.columns())

    @property
    def rank(self) -> int:
        return len(rref(self.rows, self.n_in)[0])

    def image_of(self, sub: Subspace) -> Subspace:
        if sub.ambient != self.domain:
            raise AmbientMismatch(f"{sub.ambient!r} is not the domain {self.domain!r}")
        return Subspace.span(self.codomain, self.n_out, [self.apply(v) for v in sub.basis])

    def preimage(self, sub: Subspace) -> Subspace:
        """``{v : self(v) ∈ sub}``."""
        if sub.ambient != self.codomain:
            raise AmbientMismatch(f"{sub.ambient!r} is not the codomain {self.codomain!r}")
        ann = sub.annihilator()
        if not ann:
            return Subspace.full(self.domain, self.n_in)
        composed = []
        for w in ann:
            acc = [ZERO] * self.n_in
            for wi, r in zip(w, self._sparse_rows):
                if wi:
                    for j, a in r:
                        acc[j] = acc[j] + wi * a
            composed.append(acc)
        return Subspace.span(self.domain, self.n_in, nullspace(composed, self.n_in))


@dataclass(frozen=True)
class Solution:
    kernel: Subspace
    image: Subspace
    rank: int


def solve(linear_map: LinearMap) -> Solution:
    """Kernel, image and rank of a map; ``rank + dim kernel = dim domain``."""
    image = linear_map.image()
    return Solution(linear_map.kernel(), image, image.dim)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    ann = a.annihilator() + b.annihilator()
    return Subspace.span(a.ambient, a.n, nullspace(ann, a.n))


def stack(domain, maps: Sequence[LinearMap]) -> LinearMap:
    """Vertical concatenation of maps sharing a domain (codomain label is the tuple of theirs)."""
    rows: List[Vector] = []
    for m in maps:
        if m.domain != domain:
            raise AmbientMismatch("stacked maps must share a domain")
        rows.extend(m.rows)
    n_in = maps[0].n_in if maps else 0
    return LinearMap(domain, tuple(m.codomain for m in maps), n_in, len(rows), tuple(rows))


def combine(op: str, *args) -> Subspace:
    """Dispatcher for ``sum``, ``intersection`` and ``preimage(map, subspace)``."""
    if op == "sum":
        out = args[0]
        for s in args[1:]:
            out = out + s
        return out
    if op == "intersection":
        out = args[0]
        for s in args[1:]:
            out = intersection(out, s)
        return out
    if op == "preimage":
        linear_map, sub = args
        return linear_map.preimage(sub)
    raise ValueError(f"unknown subspace operation {op!r}")
