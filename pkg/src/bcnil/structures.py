"""Invariant complex structures on 6-dimensional nilpotent Lie algebras.

A :class:`ComplexStructure` is given by ``dω^1, dω^2, dω^3`` in a (1,0)-coframe; ``d`` is
extended to the whole exterior algebra as an antiderivation, with ``dω^{j̄}`` the
conjugate of ``dω^j``.  Since no ``dω^j`` has a (0,2) part, ``d = ∂ + ∂̄`` with ``∂`` of
bidegree (1,0) and ``∂̄`` of bidegree (0,1).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import (
    N, ZERO, ONE, I, Form, GaussianRational, Monomial, Scalar, basis, conjugate, omega,
    sort_sign, total_basis, wedge,
)
from .errors import DSquaredNonzero, FamilyConstraintViolation, NonIntegrable
from .linalg import LinearMap, Subspace

OPERATORS = ("d", "del", "delbar", "deldelbar")


def bidegree_label(p: int, q: int):
    return ("L", p, q)


def degree_label(k: int):
    return ("A", k)


class ComplexStructure:
    """Structure equations ``dω^1, dω^2, dω^3`` plus where they came from.

    Raises :class:`NonIntegrable` if some ``dω^j`` has a (0,2) part and
    :class:`DSquaredNonzero` if ``d∘d ≠ 0`` on the coframe.
    """

    def __init__(self, d1: Form | None, d2: Form, d3: Form, provenance: Optional[dict] = None,
                 claimed_algebra: Optional[str] = None):
        self.equations = (d1 or Form(), d2, d3)
        self.provenance = dict(provenance or {"family": "raw"})
        self.claimed_algebra = claimed_algebra
        self._lock = threading.RLock()
        self._memo: Dict[tuple, object] = {}
        self._validate()

    # ------------------------------------------------------------------ validation
    def _validate(self):
        for j, dw in enumerate(self.equations, start=1):
            for m in dw.terms:
                if m.degree != 2:
                    raise NonIntegrable(f"dω^{j} has a term {m} of degree {m.degree}")
                if m.bidegree == (0, 2):
                    raise NonIntegrable(f"dω^{j} has a (0,2) component")
        if self.equations[0]:
            raise NonIntegrable("dω^1 must vanish in the coframes used here")
        for j in range(1, N + 1):
            dd = self.d(self.equations[j - 1])
            if dd:
                raise DSquaredNonzero(f"d(dω^{j}) = {dd}")

    # ------------------------------------------------------------------ exterior derivative
    @cached_property
    def _generator_d(self) -> Dict[int, Form]:
        gens = {j: self.equations[j - 1] for j in range(1, N + 1)}
        for j in range(1, N + 1):
            gens[j + N] = conjugate(gens[j])
        return gens

    def d_monomial(self, m: Monomial) -> Form:
        key = ("dmono", m)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        slots = m.slots()
        out = Form()
        for i, s in enumerate(slots):
            dg = self._generator_d[s]
            if not dg:
                continue
            before = Form.monomial([x for x in slots[:i] if x <= N], [x - N for x in slots[:i] if x > N])
            after = Form.monomial([x for x in slots[i + 1:] if x <= N], [x - N for x in slots[i + 1:] if x > N])
            term = wedge(wedge(before, dg), after)
            out = out + (term if i % 2 == 0 else -term)
        with self._lock:
            self._memo[key] = out
        return out

    def d(self, form: Form) -> Form:
        out = Form()
        for m, c in form.terms.items():
            out = out + self.d_monomial(m) * c
        return out

    def partial(self, form: Form) -> Form:
        out = Form()
        for m, c in form.terms.items():
            p, q = m.bidegree
            out = out + self.d_monomial(m).component(p + 1, q) * c
        return out

    def partial_bar(self, form: Form) -> Form:
        out = Form()
        for m, c in form.terms.items():
            p, q = m.bidegree
            out = out + self.d_monomial(m).component(p, q + 1) * c
        return out

    def ddbar(self, form: Form) -> Form:
        return self.partial(self.partial_bar(form))

    # ------------------------------------------------------------------ matrices
    def operator(self, which: str, p: int, q: int) -> LinearMap:
        """Matrix of ``which`` on Λ^{p,q} in canonical monomial bases.

        ``d`` lands in the total space Λ^{p+q+1}; ``del``, ``delbar`` and ``deldelbar``
        land in Λ^{p+1,q}, Λ^{p,q+1} and Λ^{p+1,q+1}.  Bidegrees outside the range give
        zero maps between (possibly empty) spaces.
        """
        key = ("op", which, p, q)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        src = basis(p, q)
        if which == "d":
            tgt_label, tgt = degree_label(p + q + 1), total_basis(p + q + 1)
            fn: Callable[[Form], Form] = self.d
        elif which == "del":
            tgt_label, tgt, fn = bidegree_label(p + 1, q), basis(p + 1, q), self.partial
        elif which == "delbar":
            tgt_label, tgt, fn = bidegree_label(p, q + 1), basis(p, q + 1), self.partial_bar
        elif which == "deldelbar":
            tgt_label, tgt, fn = bidegree_label(p + 1, q + 1), basis(p + 1, q + 1), self.ddbar
        else:
            raise ValueError(f"unknown operator {which!r}; expected one of {OPERATORS}")
        cols = [fn(Form({m: ONE})).to_vector(tgt) for m in src]
        result = LinearMap.from_columns(bidegree_label(p, q), tgt_label, len(tgt), cols)
        with self._lock:
            self._memo[key] = result
        return result

    def total_d(self, k: int) -> LinearMap:
        """``d: Λ^k → Λ^{k+1}`` in the bases of :func:`total_basis`."""
        key = ("dtot", k)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        src, tgt = total_basis(k), total_basis(k + 1)
        cols = [self.d_monomial(m).to_vector(tgt) for m in src]
        result = LinearMap.from_columns(degree_label(k), degree_label(k + 1), len(tgt), cols)
        with self._lock:
            self._memo[key] = result
        return result

    def memo(self, key, compute):
        """Per-structure cache used by the cohomology and invariant modules."""
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = compute()
        with self._lock:
            return self._memo.setdefault(key, value)

    # ------------------------------------------------------------------ topology
    def betti(self, k: int) -> int:
        """``dim H^k`` of the complexified Chevalley-Eilenberg complex."""
        if not 0 <= k <= 2 * N:
            raise ValueError("degree out of range")

        def compute():
            dk = self.total_d(k)
            rank_in = self.total_d(k - 1).rank if k > 0 else 0
            return (dk.n_in - dk.rank) - rank_in
        return self.memo(("betti", k), compute)

    def betti_numbers(self) -> Tuple[int, ...]:
        return tuple(self.betti(k) for k in range(2 * N + 1))

    # ------------------------------------------------------------------ classification
    def classify(self) -> str:
        """One of ``complexParallelizable``, ``abelian``, ``nilpotentNonAbelian``, ``nonNilpotent``.

        Complex-parallelizable is tested first, so the torus lands there.  Nilpotency is
        read off the given coframe only.
        """
        bideg = [set(dw.bidegrees()) for dw in self.equations]
        if all(b <= {(2, 0)} for b in bideg):
            return "complexParallelizable"
        if all(b <= {(1, 1)} for b in bideg):
            return "abelian"
        if self.is_nilpotent_in_basis():
            return "nilpotentNonAbelian"
        return "nonNilpotent"

    def is_nilpotent_in_basis(self) -> bool:
        for j, dw in enumerate(self.equations, start=1):
            allowed = set(range(1, j))
            for m in dw.terms:
                if not (set(m.hol) <= allowed and set(m.anti) <= allowed):
                    return False
        return True

    # ------------------------------------------------------------------ misc
    def __repr__(self):
        eqs = ", ".join(f"dω{j}={dw}" for j, dw in enumerate(self.equations, 1))
        return f"ComplexStructure({self.provenance}, {eqs})"

    def to_json(self) -> dict:
        from .jsonio import structure_to_json
        return structure_to_json(self)


# ---------------------------------------------------------------------------- builders

def _scalar(x: Scalar) -> GaussianRational:
    return GaussianRational.coerce(x)


def _require(cond: bool, msg: str):
    if not cond:
        raise FamilyConstraintViolation(msg)


def torus() -> ComplexStructure:
    return ComplexStructure(Form(), Form(), Form(), {"family": "torus"}, "h1")


def parallelizable(rho: Scalar = 1) -> ComplexStructure:
    """``dω^1 = dω^2 = 0, dω^3 = ρ ω^{12}``; ρ = 1 is the Iwasawa manifold."""
    rho = _scalar(rho)
    _require(rho in (0, 1), "rho must be 0 or 1")
    return ComplexStructure(Form(), Form(), omega("12", "", rho),
                            {"family": "parallelizable", "rho": rho}, "h5" if rho == 1 else "h1")


def iwasawa() -> ComplexStructure:
    return parallelizable(1)


def family_i(rho: Scalar, lam: Scalar, D: Scalar, claimed_algebra: Optional[str] = None) -> ComplexStructure:
    """``dω^3 = ρω^{12} + ω^{11̄} + λω^{12̄} + Dω^{22̄}`` with ρ ∈ {0,1}, λ ≥ 0, Im D ≥ 0."""
    rho, lam, D = _scalar(rho), _scalar(lam), _scalar(D)
    _require(rho in (0, 1), "Family I: rho must be 0 or 1")
    _require(lam.is_real and lam.re >= 0, "Family I: lambda must be real and >= 0")
    _require(D.im >= 0, "Family I: Im D must be >= 0")
    d3 = omega("12", "", rho) + omega("1", "1") + omega("1", "2", lam) + omega("2", "2", D)
    return ComplexStructure(Form(), Form(), d3, {"family": "I", "rho": rho, "lambda": lam, "D": D},
                            claimed_algebra)


def family_ii(rho: Scalar, B: Scalar, c: Scalar, claimed_algebra: Optional[str] = None) -> ComplexStructure:
    """``dω^2 = ω^{11̄}, dω^3 = ρω^{12} + Bω^{12̄} + cω^{21̄}`` with (ρ, B, c) ≠ (0, 0, 0)."""
    rho, B, c = _scalar(rho), _scalar(B), _scalar(c)
    _require(rho in (0, 1), "Family II: rho must be 0 or 1")
    _require(c.is_real and c.re >= 0, "Family II: c must be real and >= 0")
    _require(bool(rho) or bool(B) or bool(c), "Family II: (rho, B, c) must differ from (0, 0, 0)")
    d2 = omega("1", "1")
    d3 = omega("12", "", rho) + omega("1", "2", B) + omega("2", "1", c)
    return ComplexStructure(Form(), d2, d3, {"family": "II", "rho": rho, "B": B, "c": c}, claimed_algebra)


def family_iii(eps: Scalar, sign: int = 1, claimed_algebra: Optional[str] = None) -> ComplexStructure:
    """``dω^2 = ω^{13} + ω^{13̄}, dω^3 = iεω^{11̄} ± i(ω^{12̄} − ω^{21̄})``; ``sign`` picks ±.

    The ``iε`` coefficient keeps ``ω^3 + ω^{3̄}`` non-closed for ε = 1, as h26+ requires.
    """
    eps = _scalar(eps)
    _require(eps in (0, 1), "Family III: epsilon must be 0 or 1")
    _require(sign in (1, -1), "Family III: sign must be +1 or -1")
    d2 = omega("13") + omega("1", "3")
    d3 = omega("1", "1", I * eps) + (omega("1", "2") - omega("2", "1")) * (I * sign)
    if claimed_algebra is None:
        claimed_algebra = "h19-" if eps == 0 else "h26+"
    return ComplexStructure(Form(), d2, d3, {"family": "III", "eps": eps, "sign": sign}, claimed_algebra)


def raw(d2: Form, d3: Form, claimed_algebra: Optional[str] = None, d1: Form | None = None) -> ComplexStructure:
    return ComplexStructure(d1, d2, d3, {"family": "raw"}, claimed_algebra)


def build(family: str, **params) -> ComplexStructure:
    """Construct a structure from a provenance name and its parameters."""
    fam = str(family)
    if fam == "torus":
        return torus()
    if fam in ("parallelizable", "iwasawa"):
        return parallelizable(params.get("rho", 1))
    claimed = params.pop("claimed_algebra", None)
    if fam == "I":
        return family_i(params.get("rho", 0), params.get("lambda", params.get("lam", 0)), params.get("D", 0), claimed)
    if fam == "II":
        return family_ii(params.get("rho", 0), params.get("B", 0), params.get("c", 0), claimed)
    if fam == "III":
        return family_iii(params.get("eps", 0), int(params.get("sign", 1)), claimed)
    raise FamilyConstraintViolation(f"unknown family {family!r}")


# ---------------------------------------------------------------------------- real catalog

@dataclass(frozen=True)
class CatalogEntry:
    """A real 6-dimensional nilpotent Lie algebra in Salamon's notation."""

    label: str
    equations: str
    step: int
    _betti: list = field(default_factory=list, compare=False, repr=False)

    @cached_property
    def _differentials(self) -> Dict[int, Dict[Tuple[int, ...], Fraction]]:
        return parse_structure_constants(self.equations)

    def betti_numbers(self) -> Tuple[int, ...]:
        if not self._betti:
            self._betti.extend(_real_betti(self._differentials))
        return tuple(self._betti)


def parse_structure_constants(text: str) -> Dict[int, Dict[Tuple[int, ...], Fraction]]:
    """``"(0,0,0,0,12,14+23)"`` -> ``{6: {(1,4): 1, (2,3): 1}, 5: {(1,2): 1}, ...}``.

    A term ``42`` means ``e^4 ∧ e^2 = -e^{24}``.
    """
    body = text.strip().strip("()")
    out: Dict[int, Dict[Tuple[int, ...], Fraction]] = {}
    for i, entry in enumerate(body.split(","), start=1):
        entry = entry.strip().replace("−", "-")
        terms: Dict[Tuple[int, ...], Fraction] = {}
        if entry != "0":
            token = ""
            sign = 1
            for ch in entry + "+":
                if ch in "+-":
                    if token:
                        a, b = int(token[0]), int(token[1])
                        s, key = sort_sign([a, b])
                        terms[key] = terms.get(key, Fraction(0)) + sign * s
                    token, sign = "", (1 if ch == "+" else -1)
                else:
                    token += ch
        out[i] = terms
    return out


def _real_betti(diffs: Dict[int, Dict[Tuple[int, ...], Fraction]]) -> List[int]:
    n = len(diffs)

    def d_mono(mono: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
        res: Dict[Tuple[int, ...], Fraction] = {}
        for i, g in enumerate(mono):
            for pair, c in diffs[g].items():
                seq = list(mono[:i]) + list(pair) + list(mono[i + 1:])
                s, key = sort_sign(seq)
                if s:
                    res[key] = res.get(key, Fraction(0)) + (c * s if i % 2 == 0 else -c * s)
        return res

    bases = [list(combinations(range(1, n + 1), k)) for k in range(n + 2)]
    ranks = []
    for k in range(n + 1):
        src, tgt = bases[k], bases[k + 1]
        index = {m: i for i, m in enumerate(tgt)}
        cols = []
        for m in src:
            v = [ZERO] * len(tgt)
            for key, c in d_mono(m).items():
                v[index[key]] = GaussianRational(c)
            cols.append(v)
        ranks.append(LinearMap.from_columns(k, k + 1, len(tgt), cols).rank if tgt else 0)
    return [len(bases[k]) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


CATALOG: Dict[str, CatalogEntry] = {e.label: e for e in [
    CatalogEntry("h1", "(0,0,0,0,0,0)", 1),
    CatalogEntry("h2", "(0,0,0,0,12,34)", 2),
    CatalogEntry("h3", "(0,0,0,0,0,12+34)", 2),
    CatalogEntry("h4", "(0,0,0,0,12,14+23)", 2),
    CatalogEntry("h5", "(0,0,0,0,13+42,14+23)", 2),
    CatalogEntry("h6", "(0,0,0,0,12,13)", 2),
    CatalogEntry("h7", "(0,0,0,12,13,23)", 2),
    CatalogEntry("h8", "(0,0,0,0,0,12)", 2),
    CatalogEntry("h9", "(0,0,0,0,12,14+25)", 3),
    CatalogEntry("h10", "(0,0,0,12,13,14)", 3),
    CatalogEntry("h11", "(0,0,0,12,13,14+23)", 3),
    CatalogEntry("h12", "(0,0,0,12,13,24)", 3),
    CatalogEntry("h13", "(0,0,0,12,13+14,24)", 3),
    CatalogEntry("h14", "(0,0,0,12,14,13+42)", 3),
    CatalogEntry("h15", "(0,0,0,12,13+42,14+23)", 3),
    CatalogEntry("h16", "(0,0,0,12,14,24)", 3),
    CatalogEntry("h19-", "(0,0,0,12,23,14-35)", 3),
    CatalogEntry("h26+", "(0,0,12,13,23,14+25)", 4),
]}


def normalize_label(label: str) -> str:
    """Accept ``h19−``/``h19-``/``h^-_19`` spellings."""
    s = label.strip().replace("−", "-").replace("^", "").replace("_", "")
    if s in ("h-19", "h19-"):
        return "h19-"
    if s in ("h+26", "h26+"):
        return "h26+"
    return s


def catalog_entry(label: str) -> CatalogEntry:
    return CATALOG[normalize_label(label)]
