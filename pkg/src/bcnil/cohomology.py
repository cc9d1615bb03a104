"""De Rham, Dolbeault, Bott-Chern, Aeppli and Frölicher cohomology of a structure.

All groups are quotients of subspaces of Λ^{p,q} (or of Λ^k for de Rham and the
Frölicher terms).  Each quotient is computed after checking that the denominator sits
inside the numerator, and representatives are echelon lifts of a quotient basis.

Frölicher terms use the filtration ``F^p Λ^k = ⊕_{s≥p} Λ^{s,k-s}``::

    Z_r^{p,q} = F^p Λ^{p+q} ∩ d^{-1}(F^{p+r} Λ^{p+q+1})
    E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from .algebra import N, ONE, ZERO, Form, basis, total_basis
from .errors import UnsupportedPair
from .linalg import LinearMap, Subspace, nullspace, qdim
from .structures import ComplexStructure, bidegree_label, degree_label

THEORIES = ("deRham", "dolbeault", "bottChern", "aeppli", "froelicher")
_ALIASES = {
    "bc": "bottChern", "bott_chern": "bottChern", "bottchern": "bottChern",
    "a": "aeppli", "aeppli": "aeppli",
    "dolbeault": "dolbeault", "dol": "dolbeault", "dbar": "dolbeault",
    "derham": "deRham", "dr": "deRham", "de_rham": "deRham",
    "froelicher": "froelicher", "frolicher": "froelicher", "e": "froelicher",
}


def theory_name(name: str) -> str:
    if name in THEORIES:
        return name
    try:
        return _ALIASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown cohomology theory {name!r}") from None


@dataclass(frozen=True)
class CohomologySpace:
    """A computed cohomology group: its dimension and representative forms.

    ``numerator`` and ``denominator`` are the subspaces whose quotient is the group; for
    Frölicher terms they live in the total space Λ^{p+q}.
    """

    theory: str
    degrees: Tuple[int, ...]
    dimension: int
    representatives: Tuple[Form, ...]
    numerator: Subspace = field(repr=False, compare=False)
    denominator: Subspace = field(repr=False, compare=False)
    monomials: Tuple = field(repr=False, compare=False, default=())

    def class_span(self, forms) -> Subspace:
        """Span of ``forms`` plus the denominator, for comparisons modulo exact terms."""
        vecs = [f.to_vector(list(self.monomials)) for f in forms]
        return Subspace.span(self.denominator.ambient, self.denominator.n, vecs) + self.denominator

    def spans_same_classes(self, forms) -> bool:
        """True when ``forms`` give a basis-equivalent set of classes for this group."""
        return self.class_span(forms) == self.class_span(self.representatives)


def _quotient(theory: str, degrees: Tuple[int, ...], numerator: Subspace, denominator: Subspace,
              monomials: List) -> CohomologySpace:
    dim = qdim(numerator, denominator)
    reps = tuple(Form.from_vector(monomials, v) for v in denominator.complement_in(numerator))
    assert len(reps) == dim
    return CohomologySpace(theory, degrees, dim, reps, numerator, denominator, tuple(monomials))


def _empty(theory, degrees, label) -> CohomologySpace:
    z = Subspace.zero(label, 0)
    return CohomologySpace(theory, degrees, 0, (), z, z, ())


def _in_range(p: int, q: int) -> bool:
    return 0 <= p <= N and 0 <= q <= N


def _image_into(s: ComplexStructure, which: str, p: int, q: int, target: Tuple[int, int]) -> Subspace:
    """Image of ``which`` applied to Λ^{p,q}, as a subspace of Λ^{target}."""
    tp, tq = target
    if not _in_range(p, q):
        return Subspace.zero(bidegree_label(tp, tq), len(basis(tp, tq)))
    return s.operator(which, p, q).image()


def bott_chern(s: ComplexStructure, p: int, q: int) -> CohomologySpace:
    """``ker(d|Λ^{p,q}) / im(∂∂̄|Λ^{p-1,q-1})``."""
    def compute():
        if not _in_range(p, q):
            return _empty("bottChern", (p, q), bidegree_label(p, q))
        closed = s.operator("d", p, q).kernel()
        exact = _image_into(s, "deldelbar", p - 1, q - 1, (p, q))
        return _quotient("bottChern", (p, q), closed, exact, basis(p, q))
    return s.memo(("bc", p, q), compute)


def aeppli(s: ComplexStructure, p: int, q: int) -> CohomologySpace:
    """``ker(∂∂̄|Λ^{p,q}) / (im ∂|Λ^{p-1,q} + im ∂̄|Λ^{p,q-1})``."""
    def compute():
        if not _in_range(p, q):
            return _empty("aeppli", (p, q), bidegree_label(p, q))
        closed = s.operator("deldelbar", p, q).kernel()
        exact = _image_into(s, "del", p - 1, q, (p, q)) + _image_into(s, "delbar", p, q - 1, (p, q))
        return _quotient("aeppli", (p, q), closed, exact, basis(p, q))
    return s.memo(("aeppli", p, q), compute)


def dolbeault(s: ComplexStructure, p: int, q: int) -> CohomologySpace:
    """``ker(∂̄|Λ^{p,q}) / im(∂̄|Λ^{p,q-1})``."""
    def compute():
        if not _in_range(p, q):
            return _empty("dolbeault", (p, q), bidegree_label(p, q))
        closed = s.operator("delbar", p, q).kernel()
        exact = _image_into(s, "delbar", p, q - 1, (p, q))
        return _quotient("dolbeault", (p, q), closed, exact, basis(p, q))
    return s.memo(("dolbeault", p, q), compute)


def de_rham(s: ComplexStructure, k: int) -> CohomologySpace:
    def compute():
        if not 0 <= k <= 2 * N:
            return _empty("deRham", (k,), degree_label(k))
        closed = s.total_d(k).kernel()
        exact = s.total_d(k - 1).image() if k > 0 else Subspace.zero(degree_label(k), len(total_basis(k)))
        return _quotient("deRham", (k,), closed, exact, total_basis(k))
    return s.memo(("dr", k), compute)


# ---------------------------------------------------------------------------- Frölicher

def filtration(k: int, p: int) -> Subspace:
    """``F^p Λ^k``: span of monomials of holomorphic degree >= p."""
    mons = total_basis(k)
    return Subspace.coordinate(degree_label(k), len(mons), [i for i, m in enumerate(mons) if len(m.hol) >= p])


def zig_zag_space(s: ComplexStructure, r: int, p: int, k: int) -> Subspace:
    """``Z_r^{p, k-p}``; for r = 0 this is ``F^p Λ^k``."""
    def compute():
        if r == 0:
            return filtration(k, p)
        # F^p is a coordinate subspace, so both conditions are linear equations on Λ^k
        mons, rows = total_basis(k), []
        n = len(mons)
        for j, m in enumerate(mons):
            if len(m.hol) < p:
                rows.append([ONE if i == j else ZERO for i in range(n)])
        d = s.total_d(k)
        rows += [row for row, m in zip(d.rows, total_basis(k + 1)) if len(m.hol) < p + r]
        return Subspace.span(degree_label(k), n, nullspace(rows, n))
    return s.memo(("Z", r, p, k), compute)


def froelicher(s: ComplexStructure, r: int, p: int, q: int) -> CohomologySpace:
    """The term ``E_r^{p,q}`` of the Frölicher spectral sequence (r >= 1)."""
    if r < 1:
        raise ValueError("Frölicher terms start at r = 1")

    def compute():
        if not _in_range(p, q):
            return _empty("froelicher", (r, p, q), degree_label(p + q))
        k = p + q
        z = zig_zag_space(s, r, p, k)
        boundary_src = zig_zag_space(s, r - 1, p - r + 1, k - 1) if k >= 1 else None
        denom = zig_zag_space(s, r - 1, p + 1, k)
        if boundary_src is not None:
            denom = denom + s.total_d(k - 1).image_of(boundary_src)
        return _quotient("froelicher", (r, p, q), z, denom, total_basis(k))
    return s.memo(("E", r, p, q), compute)


def space(s: ComplexStructure, theory: str, *degrees: int) -> CohomologySpace:
    """Dispatch: ``space(s, "bottChern", p, q)``, ``space(s, "deRham", k)``,
    ``space(s, "froelicher", r, p, q)``."""
    name = theory_name(theory)
    if name == "deRham":
        return de_rham(s, *degrees)
    if name == "froelicher":
        return froelicher(s, *degrees)
    return {"bottChern": bott_chern, "aeppli": aeppli, "dolbeault": dolbeault}[name](s, *degrees)


def dimension_table(s: ComplexStructure, theory: str, r: int = 1) -> List[List[int]]:
    """``table[p][q]`` = dimension of the bidegree-(p,q) group, 0 <= p, q <= 3."""
    name = theory_name(theory)
    if name == "froelicher":
        return [[froelicher(s, r, p, q).dimension for q in range(N + 1)] for p in range(N + 1)]
    return [[space(s, name, p, q).dimension for q in range(N + 1)] for p in range(N + 1)]


# ---------------------------------------------------------------------------- natural maps

@dataclass(frozen=True)
class NaturalMap:
    source: str
    target: str
    degrees: Tuple[int, ...]
    rank: int
    source_dim: int
    target_dim: int

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


SUPPORTED_MAPS = {("dolbeault", "aeppli"), ("bottChern", "dolbeault"), ("bottChern", "deRham")}


def natural_map_rank(s: ComplexStructure, source: str, target: str, p: int, q: int) -> NaturalMap:
    """Rank of the map induced by the identity on forms between two cohomologies at (p,q).

    For ``bottChern -> deRham`` the target is ``H^{p+q}``.
    """
    src, tgt = theory_name(source), theory_name(target)
    if (src, tgt) not in SUPPORTED_MAPS:
        raise UnsupportedPair(f"no natural map {src} -> {tgt} is supported")
    a = space(s, src, p, q)
    if tgt == "deRham":
        b = de_rham(s, p + q)
        mons = list(b.monomials)
        reps = [f.to_vector(mons) for f in a.representatives]
    else:
        b = space(s, tgt, p, q)
        mons = list(b.monomials)
        reps = [f.to_vector(mons) for f in a.representatives]
    den = b.denominator
    rank = (Subspace.span(den.ambient, den.n, reps) + den).dim - den.dim
    return NaturalMap(src, tgt, (p, q), rank, a.dimension, b.dimension)
