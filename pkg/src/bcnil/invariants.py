"""The ∂∂̄-type invariants f_k and k_r, the ∂∂̄-lemma test, and the Z^{1,1} exact-sequence certificate."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .algebra import N, ZERO, basis, total_basis
from .cohomology import bott_chern, froelicher
from .linalg import Subspace
from .structures import ComplexStructure, degree_label


def f_invariant(s: ComplexStructure, k: int) -> int:
    """``Σ_{p+q=k} (h^BC_{p,q} + h^BC_{3-p,3-q}) - 2 b_k``."""
    if not 0 <= k <= 2 * N:
        raise ValueError("k must lie in 0..6")
    total = 0
    for p in range(N + 1):
        q = k - p
        if 0 <= q <= N:
            total += bott_chern(s, p, q).dimension + bott_chern(s, N - p, N - q).dimension
    value = total - 2 * s.betti(k)
    assert value >= 0, f"negative f_{k} = {value}"
    return value


def k_invariant(s: ComplexStructure, r: int) -> int:
    """``h^BC_{1,1} + 2 dim E_r^{0,2} - b_2``."""
    if r < 1:
        raise ValueError("r must be >= 1")
    value = bott_chern(s, 1, 1).dimension + 2 * froelicher(s, r, 0, 2).dimension - s.betti(2)
    assert value >= 0, f"negative k_{r} = {value}"
    return value


def ddbar_lemma(s: ComplexStructure) -> bool:
    return all(f_invariant(s, k) == 0 for k in range(2 * N + 1))


@dataclass(frozen=True)
class Certificate:
    """Dimensions in ``0 -> Z^{1,1} -> H^{1,1}_BC -> H^2 -> conj(E_r^{0,2}) ⊕ E_r^{0,2} -> coker -> 0``."""

    dim_z11: int
    h11_bc: int
    b2: int
    e02: int
    coker: int

    @property
    def alternating_sum(self) -> int:
        return self.dim_z11 - self.h11_bc + self.b2 - 2 * self.e02 + self.coker

    def as_tuple(self) -> Tuple[int, int, int, int, int]:
        return (self.dim_z11, self.h11_bc, self.b2, self.e02, self.coker)


def z11_dimension(s: ComplexStructure) -> int:
    """``dim (ker d|Λ^{1,1} ∩ d(Λ^1)) / ∂∂̄(Λ^0)``; the denominator vanishes on Lie algebras."""
    mons = total_basis(2)
    mixed = Subspace.coordinate(degree_label(2), len(mons), [i for i, m in enumerate(mons) if m.bidegree == (1, 1)])
    exact_mixed = s.total_d(1).image() & mixed
    return exact_mixed.dim - s.operator("deldelbar", 0, 0).rank


def v_rank(s: ComplexStructure) -> int:
    """Rank of ``[α] -> ([α_{2,0}], [α_{0,2}])`` on ``H^2``.

    The (0,2) part of a closed form satisfies every zig-zag condition, and the denominator
    of E_r^{0,2} is always ``∂̄(Λ^{0,1})``, so the rank does not depend on r.
    """
    def compute():
        mons = total_basis(2)
        outer = [m for m in mons if m.bidegree in ((2, 0), (0, 2))]
        n = len(outer)
        pos = {m: j for j, m in enumerate(outer)}

        def embed(block, sub):
            rows = []
            for vec in sub.basis:
                row = [ZERO] * n
                for m, c in zip(block, vec):
                    row[pos[m]] = c
                rows.append(row)
            return rows

        exact = embed(basis(2, 0), s.operator("del", 1, 0).image()) + \
            embed(basis(0, 2), s.operator("delbar", 0, 1).image())
        w = Subspace.span(("V", 2), n, exact)
        keep = [i for i, m in enumerate(mons) if m in pos]
        closed = s.total_d(2).kernel()
        images = Subspace.span(("V", 2), n, [[v[i] for i in keep] for v in closed.basis])
        return (images + w).dim - w.dim
    return s.memo(("vrank",), compute)


def relation_certificate(s: ComplexStructure, r: int) -> Certificate:
    if r < 1:
        raise ValueError("r must be >= 1")
    e02 = froelicher(s, r, 0, 2).dimension
    cert = Certificate(z11_dimension(s), bott_chern(s, 1, 1).dimension, s.betti(2), e02, 2 * e02 - v_rank(s))
    assert cert.coker >= 0
    assert cert.alternating_sum == 0, f"exact sequence fails: {cert}"
    return cert


@dataclass(frozen=True)
class InvariantReport:
    f: Tuple[int, ...]
    k_triple: Tuple[int, int, int]
    ddbar_lemma: bool
    certificates: Tuple[Certificate, ...]

    def to_json(self) -> dict:
        return {
            "f": list(self.f),
            "kTriple": list(self.k_triple),
            "ddbarLemma": self.ddbar_lemma,
            "certificate": {str(r): list(c.as_tuple()) for r, c in enumerate(self.certificates, start=1)},
        }


def invariant_report(s: ComplexStructure) -> InvariantReport:
    f = tuple(f_invariant(s, k) for k in range(2 * N + 1))
    k = tuple(k_invariant(s, r) for r in (1, 2, 3))
    assert k[0] >= k[1] >= k[2] >= 0
    return InvariantReport(f, k, not any(f), tuple(relation_certificate(s, r) for r in (1, 2, 3)))
