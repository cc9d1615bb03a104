"""Two explicit holomorphic deformation curves and parameter sweeps along them.

``h4Abelian``: the abelian structure familyI(0, 1, 1/4) at a = 0, and
familyI(1, 1, (a² - 1)/(4a²)) for 0 < a < 1; the Bott-Chern number h_{1,1} jumps at a = 1/3.

``iwasawa``: the Iwasawa manifold at a = 0, and familyI(1, a, 0) for 0 < a < 1.
"""
from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .algebra import GaussianRational, Scalar, format_scalar
from .cohomology import aeppli, bott_chern, dolbeault
from .errors import BcnilError, ConstraintViolation, InputError, OutOfDomain
from .hermitian import HermitianMetric, balanced_family_i_metrics, l22
from .invariants import f_invariant, k_invariant
from .structures import ComplexStructure, family_i, parallelizable

CURVES = ("h4Abelian", "iwasawa")
WALL = {"h4Abelian": Fraction(1, 3)}
BC_DIMS = ((1, 0), (2, 0), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2))


def _parameter(a: Scalar) -> Fraction:
    a = GaussianRational.coerce(a)
    if not a.is_real:
        raise OutOfDomain("the curve parameter must be real")
    return a.re


def curve_at(name: str, a: Scalar) -> ComplexStructure:
    a = _parameter(a)
    if not 0 <= a < 1:
        raise OutOfDomain(f"curve parameter {a} outside [0, 1)")
    if name == "h4Abelian":
        if a == 0:
            return family_i(0, 1, Fraction(1, 4), "h4")
        return family_i(1, 1, (a * a - 1) / (4 * a * a), "h4")
    if name == "iwasawa":
        if a == 0:
            return parallelizable(1)
        return family_i(1, a, 0, "h5")
    raise InputError(f"unknown curve {name!r}; expected one of {CURVES}")


# ---------------------------------------------------------------------------- metric rules

def transported_metric(a: Scalar, t2: Scalar = 1) -> HermitianMetric:
    """Balanced metric ``(i/2)(μ^{11̄} + μ^{22̄}/(1-a²) + t² μ^{33̄})`` on the iwasawa curve.

    Here ``μ^1 = η^1, μ^2 = η^2 + a η^{2̄}, μ^3 = η^3`` in terms of the Iwasawa coframe.
    The normalised coframe satisfies ``μ^1 = ω^1, μ^2 = ω^2 - ω^1/a, μ^3 = ω^3/(1-a²)``
    and a further phase change ``ω^1 → -iω^1, ω^2 → iω^2`` turns
    ``dω^3 = ω^{12} + ω^{11̄} - aω^{12̄}`` into Family I with λ = a; that flips the sign of h_{12̄}.
    """
    a = _parameter(a)
    t2 = GaussianRational.coerce(t2)
    if a == 0:
        return HermitianMetric.iwasawa(t2)
    k = 1 / (1 - a * a)
    # H = Pᵀ diag(1, k, t²) P with P = [[1,0,0],[-1/a,1,0],[0,0,k]] (P real)
    h11 = 1 + k / (a * a)
    h12 = -k / a
    H = ((h11, -h12, 0), (-h12, k, 0), (0, 0, t2 * k * k))
    return HermitianMetric(H, {"family": "raw"})


def vertex_rule(name: str, a: Fraction, structure: ComplexStructure) -> HermitianMetric:
    if structure.provenance.get("family") == "parallelizable":
        return HermitianMetric.iwasawa(1)
    found = balanced_family_i_metrics(structure, 1)
    if not found:
        raise ConstraintViolation("no balanced metric of the standard Family I form at this sample")
    return found[0]


def transported_rule(name: str, a: Fraction, structure: ComplexStructure) -> HermitianMetric:
    if name != "iwasawa":
        raise ConstraintViolation("the transported metric rule only applies to the iwasawa curve")
    return transported_metric(a)


METRIC_RULES: Dict[str, Callable[[str, Fraction, ComplexStructure], HermitianMetric]] = {
    "vertex": vertex_rule,
    "transported": transported_rule,
}
DEFAULT_RULE = {"iwasawa": "transported", "h4Abelian": "vertex"}


# ---------------------------------------------------------------------------- sweeps

_SELECTOR = re.compile(r"^(f|k|b|bc|dolb|aeppli)(\d+)$")


def _evaluate(selector: str, name: str, a: Fraction, s: ComplexStructure, rule: str):
    sel = selector.strip()
    if sel in ("bcdims", "bottChernDims"):
        return [bott_chern(s, p, q).dimension for p, q in BC_DIMS]
    if sel == "classify":
        return s.classify()
    if sel in ("l22", "l22dim"):
        return l22(s, METRIC_RULES[rule](name, a, s)).dimension
    m = _SELECTOR.match(sel)
    if not m:
        raise InputError(f"unknown quantity selector {selector!r}")
    kind, digits = m.groups()
    if kind == "f":
        return f_invariant(s, int(digits))
    if kind == "k":
        return k_invariant(s, int(digits))
    if kind == "b":
        return s.betti(int(digits))
    if len(digits) != 2:
        raise InputError(f"selector {selector!r} needs a two-digit bidegree")
    p, q = int(digits[0]), int(digits[1])
    fn = {"bc": bott_chern, "dolb": dolbeault, "aeppli": aeppli}[kind]
    return fn(s, p, q).dimension


@dataclass
class SweepRow:
    a: Fraction
    values: Dict[str, object] = field(default_factory=dict)
    error: Optional[BcnilError] = None
    on_wall: bool = False

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_json(self) -> dict:
        out = {"a": format_scalar(GaussianRational(self.a)), "ok": self.ok, "values": self.values}
        if self.on_wall:
            out["wall"] = True
        if self.error is not None:
            out["error"] = {"code": self.error.code, "message": str(self.error)}
        return out


@dataclass
class SweepTable:
    curve: str
    quantities: List[str]
    metric_rule: str
    rows: List[SweepRow]

    def column(self, quantity: str) -> list:
        return [row.values.get(quantity) for row in self.rows]

    def to_json(self) -> dict:
        return {"curve": self.curve, "quantities": self.quantities, "metricRule": self.metric_rule,
                "rows": [r.to_json() for r in self.rows]}


def _sweep_row(name: str, sample, quantities: Sequence[str], rule: str) -> SweepRow:
    row = SweepRow(Fraction(0))
    try:
        row.a = _parameter(sample)
        row.on_wall = WALL.get(name) == row.a
        s = curve_at(name, row.a)
        for q in quantities:
            row.values[q] = _evaluate(q, name, row.a, s, rule)
    except BcnilError as exc:
        row.error = exc
    return row


def sweep(name: str, samples: Sequence[Scalar], quantities: Sequence[str], metric_rule: Optional[str] = None,
          workers: int = 1) -> SweepTable:
    """Evaluate ``quantities`` at each sample; a failing sample is marked, not fatal.

    Selectors: ``f<k>``, ``k<r>``, ``b<k>``, ``bc<p><q>``, ``dolb<p><q>``, ``aeppli<p><q>``,
    ``bcdims``, ``l22`` and ``classify``.  ``metric_rule`` chooses the balanced metric for
    ``l22`` (``vertex`` or ``transported``).
    """
    if name not in CURVES:
        raise InputError(f"unknown curve {name!r}; expected one of {CURVES}")
    rule = metric_rule or DEFAULT_RULE[name]
    if rule not in METRIC_RULES:
        raise InputError(f"unknown metric rule {rule!r}")
    quantities = list(quantities)
    for q in quantities:
        if not (q in ("bcdims", "bottChernDims", "classify", "l22", "l22dim") or _SELECTOR.match(q)):
            raise InputError(f"unknown quantity selector {q!r}")
    task = lambda sample: _sweep_row(name, sample, quantities, rule)  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(task, samples))
    else:
        rows = [task(x) for x in samples]
    return SweepTable(name, quantities, rule, rows)
