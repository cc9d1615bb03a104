"""Reproduction of the Bott-Chern dimension tables from stored rational witnesses.

The witness file lists one entry per table row: the family, a parameter point, the row's
defining condition and the expected seven dimensions.  Conditions are small arithmetic
expressions over exact rationals, checked at load time; a failing witness raises
:class:`WitnessInvalid`.  Set ``BCNIL_WITNESS_FILE`` to use a different file.
"""
from __future__ import annotations

import ast
import json
import operator
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional, Tuple

import jsonschema

from .algebra import GaussianRational, parse_scalar
from .cohomology import bott_chern
from .errors import InputError, WitnessInvalid
from .hermitian import balanced_family_i_metrics, classify_metric
from .structures import CATALOG, ComplexStructure, build, normalize_label

COLUMNS = ("h10", "h20", "h11", "h21", "h31", "h22", "h32")
BIDEGREES = ((1, 0), (2, 0), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2))
ENV_VAR = "BCNIL_WITNESS_FILE"

_SCALAR = {"type": "string", "pattern": r"^-?\d+(/\d+)?([+-]\d+(/\d+)?i)?$|^-?\d+(/\d+)?i$"}
_PARAMS = {"type": "object", "additionalProperties": _SCALAR, "minProperties": 1}
SCHEMA = {
    "type": "object",
    "required": ["version", "rows"],
    "properties": {
        "version": {"const": 1},
        "columns": {"const": list(COLUMNS)},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["table", "algebra", "family", "condition", "witness", "expected"],
                "additionalProperties": False,
                "properties": {
                    "table": {"enum": ["appendix", "table1"]},
                    "algebra": {"type": "string"},
                    "family": {"enum": ["I", "II", "III"]},
                    "condition": {"type": "string", "minLength": 1},
                    "witness": _PARAMS,
                    "alsoHolds": {"type": "array", "items": _PARAMS},
                    "expected": {"type": "array", "items": {"type": "integer", "minimum": 0},
                                 "minItems": 7, "maxItems": 7},
                    "balancedExists": {"type": "boolean"},
                    "flags": {"type": "object", "additionalProperties": {"type": "boolean"}},
                },
            },
        },
    },
}

# ---------------------------------------------------------------------------- conditions

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv,
           ast.Pow: operator.pow}
_CMPOPS = {ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt, ast.LtE: operator.le,
           ast.Gt: operator.gt, ast.GtE: operator.ge}


def evaluate_condition(text: str, env: Dict[str, Fraction]) -> bool:
    """Evaluate a condition such as ``"rho == 1 and 0 < y < lam**2 / 2"`` exactly.

    Only numbers, the variables in ``env``, arithmetic (integer powers), comparisons
    (chains allowed) and ``and``/``or``/``not`` are accepted.
    """
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.BoolOp):
            vals = (ev(v) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.Not):
                return not ev(node.operand)
            if isinstance(node.op, ast.USub):
                return -ev(node.operand)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow) and not (isinstance(right, Fraction) and right.denominator == 1):
                raise ValueError("only integer powers are allowed")
            return _BINOPS[type(node.op)](left, int(right) if isinstance(node.op, ast.Pow) else right)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                if type(op) not in _CMPOPS or not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id in env:
            return env[node.id]
        raise ValueError(f"unsupported syntax in condition: {ast.dump(node)}")

    return bool(ev(ast.parse(text, mode="eval")))


def condition_variables(family: str, params: Dict[str, GaussianRational]) -> Dict[str, Fraction]:
    if family == "I":
        D = params.get("D", GaussianRational(0))
        return {"rho": params["rho"].re, "lam": params["lambda"].re, "x": D.re, "y": D.im, "absD2": D.abs2()}
    if family == "II":
        B = params.get("B", GaussianRational(0))
        return {"rho": params["rho"].re, "bx": B.re, "by": B.im, "absB2": B.abs2(), "c": params["c"].re}
    return {"eps": params["eps"].re}


# ---------------------------------------------------------------------------- witnesses

@dataclass(frozen=True)
class WitnessRow:
    table: str
    algebra: str
    index: int
    family: str
    condition: str
    witness: Dict[str, str]
    expected: Tuple[int, ...]
    also_holds: Tuple[Dict[str, str], ...] = ()
    balanced_exists: Optional[bool] = None
    flags: Dict[str, bool] = field(default_factory=dict)

    def parameters(self, raw: Optional[Dict[str, str]] = None) -> Dict[str, object]:
        raw = self.witness if raw is None else raw
        out: Dict[str, object] = {}
        for k, v in raw.items():
            out[k] = int(v) if k == "sign" else parse_scalar(v)
        return out

    def structure(self, raw: Optional[Dict[str, str]] = None) -> ComplexStructure:
        return build(self.family, claimed_algebra=self.algebra, **self.parameters(raw))


def _default_path():
    return resources.files("bcnil").joinpath("data/witnesses.json")


def load_witnesses(path: Optional[str] = None) -> List[WitnessRow]:
    """Load, schema-check and condition-check the witness table."""
    source = path or os.environ.get(ENV_VAR)
    try:
        text = open(source, encoding="utf-8").read() if source else _default_path().read_text(encoding="utf-8")
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read witness file: {exc}") from None
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise WitnessInvalid(f"witness file fails its schema: {exc.message}") from None
    rows: List[WitnessRow] = []
    counters: Dict[Tuple[str, str], int] = {}
    for entry in data["rows"]:
        label = normalize_label(entry["algebra"])
        if label not in CATALOG:
            raise WitnessInvalid(f"unknown algebra label {entry['algebra']!r}")
        key = (entry["table"], label)
        counters[key] = counters.get(key, 0) + 1
        row = WitnessRow(entry["table"], label, counters[key], entry["family"], entry["condition"],
                         dict(entry["witness"]), tuple(entry["expected"]),
                         tuple(dict(x) for x in entry.get("alsoHolds", [])),
                         entry.get("balancedExists"), dict(entry.get("flags", {})))
        for raw in (row.witness,) + row.also_holds:
            try:
                ok = evaluate_condition(row.condition, condition_variables(row.family, row.parameters(raw)))
            except (ValueError, KeyError, SyntaxError, ZeroDivisionError) as exc:
                raise WitnessInvalid(f"{label} row {row.index}: cannot evaluate condition: {exc}") from None
            if not ok:
                raise WitnessInvalid(f"{label} row {row.index}: witness {raw} violates {row.condition!r}")
        rows.append(row)
    order = {label: i for i, label in enumerate(CATALOG)}
    rows.sort(key=lambda r: (r.table, order[r.algebra], r.index))
    return rows


# ---------------------------------------------------------------------------- report rows

@dataclass
class ReportRow:
    table: str
    algebra: str
    index: int
    family: str
    witness: Dict[str, str]
    expected: Tuple[int, ...]
    computed: Tuple[int, ...]
    mismatches: List[dict]
    balanced_exists: Optional[bool] = None
    flags: Dict[str, bool] = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        out = {"table": self.table, "algebra": self.algebra, "row": self.index, "family": self.family,
               "witness": self.witness, "expected": list(self.expected), "computed": list(self.computed),
               "match": self.match, "mismatches": self.mismatches}
        if self.balanced_exists is not None:
            out["balancedExists"] = self.balanced_exists
        if self.flags:
            out["flags"] = self.flags
        return out


def bc_dimensions(s: ComplexStructure) -> Tuple[int, ...]:
    return tuple(bott_chern(s, p, q).dimension for p, q in BIDEGREES)


def balanced_metric_exists(s: ComplexStructure) -> bool:
    """True when the Family I balanced parametrisation yields a metric classified balanced."""
    metrics = balanced_family_i_metrics(s, 1)
    return bool(metrics) and classify_metric(s, metrics[0]).balanced


def evaluate_row(row: WitnessRow) -> ReportRow:
    s = row.structure()
    computed = bc_dimensions(s)
    mismatches = [{"witness": row.witness, "cell": c, "expected": e, "computed": v}
                  for c, e, v in zip(COLUMNS, row.expected, computed) if e != v]
    for raw in row.also_holds:
        other = bc_dimensions(row.structure(raw))
        mismatches += [{"witness": raw, "cell": c, "expected": e, "computed": v}
                       for c, e, v in zip(COLUMNS, row.expected, other) if e != v]
    balanced = None
    if row.balanced_exists is not None:
        balanced = balanced_metric_exists(s)
        if balanced != row.balanced_exists:
            mismatches.append({"witness": row.witness, "cell": "balancedExists",
                               "expected": row.balanced_exists, "computed": balanced})
    return ReportRow(row.table, row.algebra, row.index, row.family, row.witness, row.expected, computed,
                     mismatches, balanced, dict(row.flags))


def report(scope: str = "all", path: Optional[str] = None) -> List[ReportRow]:
    """``scope``: ``all`` (every appendix row), ``table1``, or an algebra label (appendix rows)."""
    rows = load_witnesses(path)
    if scope == "all":
        chosen = [r for r in rows if r.table == "appendix"]
    elif scope == "table1":
        chosen = [r for r in rows if r.table == "table1"]
    else:
        label = normalize_label(scope)
        if label not in CATALOG:
            raise InputError(f"unknown report scope {scope!r}")
        chosen = [r for r in rows if r.table == "appendix" and r.algebra == label]
    return [evaluate_row(r) for r in chosen]
