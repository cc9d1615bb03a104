"""Invariant Hermitian metrics, their classification, the Hodge star and the space L^{2,2}.

A metric is a positive definite Hermitian matrix ``H = (h_{jk̄})`` with fundamental form
``F = (i/2) Σ h_{jk̄} ω^j ∧ ω^{k̄}``.  The pointwise inner product on 1-forms has Gram
matrix ``2·H^{-T}`` on ``{ω^1, ω^2, ω^3}`` (the conjugate matrix on the ``ω^{j̄}``), with
(1,0) ⊥ (0,1), extended to monomials by Gram minors.  With this scaling ``vol = F³/6``
has unit norm and ``⋆⋆ = (-1)^k``.  The star is the linear map characterised by
``β ∧ ⋆(conj γ) = ⟨β, γ⟩ vol``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    N, ONE, ZERO, I, TOP, Form, GaussianRational, Monomial, Scalar, basis, complement,
    monomial_conjugate, omega, wedge,
)
from .errors import ConstraintViolation, NotBalanced, NotHermitian, NotPositive
from .linalg import LinearMap, Subspace, stack
from .structures import ComplexStructure, bidegree_label

Matrix = Tuple[Tuple[GaussianRational, ...], ...]


def _det(m: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    n = len(m)
    if n == 0:
        return ONE
    if n == 1:
        return m[0][0]
    total = ZERO
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = m[0][j] * _det(minor)
            total = total + term if j % 2 == 0 else total - term
    return total


def _inverse(m: Matrix) -> Matrix:
    n = len(m)
    det = _det(m)
    adj = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            cof = _det(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return tuple(tuple(x / det for x in row) for row in adj)


def _as_matrix(rows) -> Matrix:
    return tuple(tuple(GaussianRational.coerce(x) for x in row) for row in rows)


def _real_positive(x: GaussianRational) -> bool:
    return x.is_real and x.re > 0


class HermitianMetric:
    """Validated metric; raises :class:`NotHermitian` or :class:`NotPositive`."""

    def __init__(self, H, provenance: Optional[dict] = None):
        H = _as_matrix(H)
        if len(H) != N or any(len(r) != N for r in H):
            raise NotHermitian(f"H must be {N}x{N}")
        for j in range(N):
            for k in range(N):
                if H[j][k] != H[k][j].conjugate():
                    raise NotHermitian(f"h[{j + 1}][{k + 1}] is not the conjugate of h[{k + 1}][{j + 1}]")
        for size in range(1, N + 1):
            minor = _det([row[:size] for row in H[:size]])
            if not _real_positive(minor):
                raise NotPositive(f"leading principal minor of order {size} is {minor}")
        self.H: Matrix = H
        self.provenance = dict(provenance or {"family": "raw"})
        inv = _inverse(H)
        self.gram: Matrix = tuple(tuple(inv[k][j] * 2 for k in range(N)) for j in range(N))
        self._lock = threading.RLock()
        self._star: Dict[Tuple[int, int], LinearMap] = {}
        self.F = Form({Monomial((j + 1,), (k + 1,)): I / 2 * H[j][k] for j in range(N) for k in range(N)})
        self.volume_coefficient = wedge(wedge(self.F, self.F), self.F).coefficient(TOP) / 6

    # ------------------------------------------------------------------ constructors
    @classmethod
    def raw(cls, H) -> "HermitianMetric":
        return cls(H)

    @classmethod
    def iwasawa(cls, t2: Scalar = 1) -> "HermitianMetric":
        """``2F = i(ω^{11̄} + ω^{22̄} + t² ω^{33̄})``."""
        t2 = GaussianRational.coerce(t2)
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, t2)), {"family": "iwasawa", "t2": t2})

    @classmethod
    def balanced_family_i(cls, structure: ComplexStructure, s2: Scalar, t2: Scalar, u: Scalar) -> "HermitianMetric":
        """``2F = i(ω^{11̄} + s²ω^{22̄} + t²ω^{33̄}) + uω^{12̄} - ūω^{21̄}`` on a Family I structure."""
        s2, t2, u = (GaussianRational.coerce(x) for x in (s2, t2, u))
        prov = structure.provenance
        if prov.get("family") != "I":
            raise ConstraintViolation("balancedFamilyI needs a Family I structure")
        lam, D = prov["lambda"], prov["D"]
        if not (_real_positive(s2) and _real_positive(t2)):
            raise ConstraintViolation("s^2 and t^2 must be positive reals")
        if not s2.re > u.abs2():
            raise ConstraintViolation("s^2 > |u|^2 fails")
        if s2 + D != I * lam * u.conjugate():
            raise ConstraintViolation("s^2 + D = i*lambda*conj(u) fails")
        H = ((1, -I * u, 0), (I * u.conjugate(), s2, 0), (0, 0, t2))
        return cls(H, {"family": "balancedI", "s2": s2, "t2": t2, "u": u})

    @classmethod
    def balanced_family_iii(cls, structure: ComplexStructure, r2: Scalar, s2: Scalar, t2: Scalar,
                            v: Scalar) -> "HermitianMetric":
        """``2F = i(r²ω^{11̄} + s²ω^{22̄} + t²ω^{33̄}) + v(ω^{23̄} - ω^{32̄})`` on Family III, ε = 0."""
        r2, s2, t2, v = (GaussianRational.coerce(x) for x in (r2, s2, t2, v))
        prov = structure.provenance
        if prov.get("family") != "III" or prov.get("eps") != 0:
            raise ConstraintViolation("balancedFamilyIII needs a Family III structure with epsilon = 0")
        if not all(_real_positive(x) for x in (r2, s2, t2)):
            raise ConstraintViolation("r^2, s^2 and t^2 must be positive reals")
        if not ((t2, v) == (ONE, ZERO) or (v == ONE and (s2 * t2).re > 1)):
            raise ConstraintViolation("need (t^2, v) = (1, 0) or v = 1 with s^2 t^2 > 1")
        H = ((r2, 0, 0), (0, s2, -I * v), (0, I * v, t2))
        return cls(H, {"family": "balancedIII", "r2": r2, "s2": s2, "t2": t2, "v": v})

    def scaled(self, c: Scalar) -> "HermitianMetric":
        c = GaussianRational.coerce(c)
        return HermitianMetric(tuple(tuple(x * c for x in row) for row in self.H), {"family": "raw"})

    # ------------------------------------------------------------------ inner product and star
    def inner(self, a: Monomial, b: Monomial) -> GaussianRational:
        """``⟨a, b⟩`` on monomials: product of the holomorphic and antiholomorphic Gram minors."""
        if a.bidegree != b.bidegree:
            return ZERO
        g = self.gram
        hol = _det([[g[i - 1][k - 1] for k in b.hol] for i in a.hol])
        anti = _det([[g[i - 1][k - 1].conjugate() for k in b.anti] for i in a.anti])
        return hol * anti

    def inner_product(self, a: Form, b: Form) -> GaussianRational:
        """Hermitian product, linear in ``a`` and conjugate-linear in ``b``."""
        total = ZERO
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                if ma.bidegree == mb.bidegree:
                    total = total + ca * cb.conjugate() * self.inner(ma, mb)
        return total

    def star_map(self, p: int, q: int) -> LinearMap:
        """Matrix of ``⋆: Λ^{p,q} → Λ^{3-q,3-p}``."""
        with self._lock:
            if (p, q) in self._star:
                return self._star[(p, q)]
        tgt = basis(N - q, N - p)
        cols = []
        for alpha in basis(p, q):
            sgn, gamma = monomial_conjugate(alpha)
            image: Dict[Monomial, GaussianRational] = {}
            for beta in basis(q, p):
                pairing = self.inner(beta, gamma)
                if pairing:
                    s_beta, comp = complement(beta)
                    image[comp] = pairing * self.volume_coefficient * (sgn * s_beta)
            cols.append(Form(image).to_vector(tgt))
        result = LinearMap.from_columns(bidegree_label(p, q), bidegree_label(N - q, N - p), len(tgt), cols)
        with self._lock:
            return self._star.setdefault((p, q), result)

    def star(self, alpha: Form) -> Form:
        out = Form()
        for (p, q) in alpha.bidegrees():
            comp = alpha.component(p, q)
            vec = self.star_map(p, q).apply(comp.to_vector(basis(p, q)))
            out = out + Form.from_vector(basis(N - q, N - p), vec)
        return out

    # ------------------------------------------------------------------ misc
    def __eq__(self, other):
        return isinstance(other, HermitianMetric) and self.H == other.H

    def __hash__(self):
        return hash(self.H)

    def __repr__(self):
        return f"HermitianMetric({[[str(x) for x in row] for row in self.H]})"

    def to_json(self) -> dict:
        from .jsonio import metric_to_json
        return metric_to_json(self)


def hodge_star(metric: HermitianMetric, alpha: Form) -> Form:
    return metric.star(alpha)


# ---------------------------------------------------------------------------- classification

@dataclass(frozen=True)
class MetricClassification:
    hermitian_valid: bool
    gauduchon: bool
    strongly_gauduchon: bool
    balanced: bool

    def to_json(self) -> dict:
        return {"hermitianValid": self.hermitian_valid, "gauduchon": self.gauduchon,
                "stronglyGauduchon": self.strongly_gauduchon, "balanced": self.balanced}


def classify_metric(s: ComplexStructure, metric: HermitianMetric) -> MetricClassification:
    """Gauduchon: ``∂∂̄F² = 0``; sG: ``∂F² ∈ ∂̄(Λ^{3,1})``; balanced: ``dF² = 0``."""
    f2 = wedge(metric.F, metric.F)
    gauduchon = not s.ddbar(f2)
    del_f2 = s.partial(f2)
    strongly = s.operator("delbar", 3, 1).image().contains(del_f2.to_vector(basis(3, 2)))
    balanced = not s.d(f2)
    assert not balanced or strongly, "balanced metric failed the sG test"
    assert not strongly or gauduchon, "sG metric failed the Gauduchon test"
    return MetricClassification(True, gauduchon, strongly, balanced)


# ---------------------------------------------------------------------------- harmonic forms

def _ddbar_star(s: ComplexStructure, metric: HermitianMetric, p: int, q: int) -> LinearMap:
    return s.operator("deldelbar", N - q, N - p).compose(metric.star_map(p, q))


def harmonic_bc(s: ComplexStructure, metric: HermitianMetric, p: int, q: int) -> Subspace:
    """``{α ∈ Λ^{p,q} : dα = 0, ∂∂̄(⋆α) = 0}``."""
    return stack(bidegree_label(p, q), [s.operator("d", p, q), _ddbar_star(s, metric, p, q)]).kernel()


def wedge_map(form: Form, p: int, q: int, target: Tuple[int, int]) -> LinearMap:
    tgt = basis(*target)
    cols = [wedge(Form({m: ONE}), form).to_vector(tgt) for m in basis(p, q)]
    return LinearMap.from_columns(bidegree_label(p, q), bidegree_label(*target), len(tgt), cols)


@dataclass(frozen=True)
class ModuliSpace:
    dimension: int
    basis: Tuple[Form, ...]
    subspace: Subspace = field(repr=False, compare=False)

    def spans(self, forms) -> bool:
        """True when ``forms`` span exactly this space."""
        vecs = [f.to_vector(basis(2, 2)) for f in forms]
        return Subspace.span(self.subspace.ambient, self.subspace.n, vecs) == self.subspace


def l22(s: ComplexStructure, metric: HermitianMetric) -> ModuliSpace:
    """``{α ∈ Λ^{2,2} : dα = 0, ∂∂̄(⋆α) = 0, α ∧ F = 0}`` for a balanced metric."""
    if not classify_metric(s, metric).balanced:
        raise NotBalanced("L^{2,2} is only defined here for balanced metrics")
    maps = [s.operator("d", 2, 2), _ddbar_star(s, metric, 2, 2), wedge_map(metric.F, 2, 2, (N, N))]
    sub = stack(bidegree_label(2, 2), maps).kernel()
    forms = tuple(Form.from_vector(basis(2, 2), v) for v in sub.basis)
    return ModuliSpace(sub.dim, forms, sub)


def conformal_factor(s: ComplexStructure, metric: HermitianMetric) -> GaussianRational:
    """``e^{2f}`` in ``iΨ∧Ψ̄ = (4/3) e^{2f} F³`` with ``Ψ = ω^{123}``."""
    psi = omega("123")
    assert not s.d(psi), "ω^{123} is not closed"
    lhs = wedge(psi, psi.conjugate()).coefficient(TOP) * I
    f3 = metric.volume_coefficient * 6
    value = lhs / (f3 * Fraction(4, 3))
    assert _real_positive(value)
    return value


# ---------------------------------------------------------------------------- Family I helpers

def _family_i_params(s: ComplexStructure):
    prov = s.provenance
    if prov.get("family") != "I":
        raise ConstraintViolation("a Family I structure is required")
    return prov["rho"], prov["lambda"], prov["D"]


def gamma_form(s: ComplexStructure, metric: HermitianMetric) -> Form:
    """The distinguished (2,2)-form spanning L^{2,2} together with the four fixed monomials (λ ≠ 0)."""
    _, lam, D = _family_i_params(s)
    s2 = metric.H[1][1]
    u = metric.H[0][1] * I
    first = lam * s2 - (D * u).im * 2
    second = lam - u.im * 2
    return (omega("13", "23") + omega("23", "13") + omega("23", "23", lam)) * first \
        - (omega("13", "13", lam) + omega("13", "23", D.conjugate()) + omega("23", "13", D)) * second


def theta_forms(s: ComplexStructure, metric: HermitianMetric) -> Tuple[Form, Form]:
    """The two extra (2,2)-forms spanning L^{2,2} when λ = 0."""
    _, _, D = _family_i_params(s)
    u = metric.H[0][1] * I
    if not u:
        return omega("13", "23"), omega("23", "13")
    t1 = omega("13", "23", u) + omega("23", "13", u.conjugate())
    t2 = omega("23", "13", I * D * 2) - (omega("13", "13") - omega("23", "23", D)) * u
    return t1, t2


FIXED_L22_MONOMIALS = (omega("12", "13"), omega("12", "23"), omega("13", "12"), omega("23", "12"))


def _balanced_s2_interval_test(lam, x, y, s2) -> bool:
    # s² > |u|² with u = (y + i(s² + x))/λ, cleared of denominators
    return s2 * s2 + (2 * x - lam * lam) * s2 + x * x + y * y < 0


def balanced_family_i_metrics(s: ComplexStructure, count: int = 3) -> List[HermitianMetric]:
    """Distinct balanced metrics from the Family I parametrisation, or [] if none exists.

    For λ ≠ 0 the constraint ``s² + D = iλū`` fixes ``u`` from ``s²`` and ``s² > |u|²``
    cuts out an open interval around ``s² = (λ² - 2x)/2``; samples are the centre and
    points ``S ± S/2^j`` inside it, with varying ``t²``.  For λ = 0 one needs ``D = -s²``
    real negative and ``u`` is free in the disc ``|u|² < s²``.
    """
    _, lam, D = _family_i_params(s)
    lam_q, x, y = lam.re, D.re, D.im
    t_values = [Fraction(1), Fraction(2), Fraction(1, 3), Fraction(5), Fraction(3, 7)]
    out: List[HermitianMetric] = []
    if lam_q == 0:
        if y != 0 or x >= 0:
            return []
        S = -x
        c = S / (2 * (1 + S))
        for k, u in enumerate([ZERO, GaussianRational(c), GaussianRational(0, c)] * 2):
            if len(out) == count:
                break
            out.append(HermitianMetric.balanced_family_i(s, S, t_values[k % len(t_values)], u))
        return out
    centre = (lam_q * lam_q - 2 * x) / 2
    if not _balanced_s2_interval_test(lam_q, x, y, centre):
        return []
    candidates = [centre]
    j = 1
    while len(candidates) < count and j < 64:
        for cand in (centre + centre / 2 ** j, centre - centre / 2 ** j):
            if len(candidates) < count and cand > 0 and _balanced_s2_interval_test(lam_q, x, y, cand):
                candidates.append(cand)
        j += 1
    for k, S in enumerate(candidates):
        u = GaussianRational(y / lam_q, (S + x) / lam_q)
        out.append(HermitianMetric.balanced_family_i(s, S, t_values[k % len(t_values)], u))
    return out


def vertex_metric(s: ComplexStructure, t2: Scalar = 1) -> HermitianMetric:
    """Centre of the balanced Family I parametrisation; ConstraintViolation if there is none."""
    found = balanced_family_i_metrics(s, 1)
    if not found:
        raise ConstraintViolation("this Family I structure admits no balanced metric of the standard form")
    m = found[0]
    u = m.H[0][1] * I
    return HermitianMetric.balanced_family_i(s, m.H[1][1], t2, u)
