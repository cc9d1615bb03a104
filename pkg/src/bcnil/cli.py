"""``bcnil``: command-line front end.

Exit status: 0 on success, 2 for unreadable or malformed input, 3 when the input is
well formed but violates a mathematical precondition (non-integrable equations, a
metric that is not positive or not balanced, a parameter outside its family).
"""
from __future__ import annotations

import argparse
import csv
import io
import re
import sys
from typing import List, Optional, Sequence

from . import jsonio
from .algebra import N, Form, GaussianRational, format_scalar, parse_scalar
from .cohomology import THEORIES, de_rham, dimension_table, froelicher, space, theory_name
from .deformations import CURVES, METRIC_RULES, sweep
from .errors import BcnilError, ConstraintViolation, InputError, NotBalanced
from .hermitian import (HermitianMetric, balanced_family_i_metrics, classify_metric, conformal_factor,
                        l22)
from .invariants import invariant_report
from .report import COLUMNS, report
from .structures import ComplexStructure, build

FORMATS = ("md", "csv", "json")
_BAR = "̅"


# ---------------------------------------------------------------------------- text rendering

def format_form(form: Form) -> str:
    """``ω^{12 1̄3̄}``-style rendering; ``0`` for the zero form."""
    parts = []
    for m, c in form:
        name = "ω^{" + "".join(map(str, m.hol)) + (" " if m.hol and m.anti else "") + \
            "".join(f"{j}{_BAR}" for j in m.anti) + "}"
        if not m.hol and not m.anti:
            text = format_scalar(c)
            parts.append(("-", text[1:]) if c.is_real and text.startswith("-") else ("+", text))
        elif c == 1:
            parts.append(("+", name))
        elif c == -1:
            parts.append(("-", name))
        else:
            text = format_scalar(c)
            if c.is_real and text.startswith("-"):
                parts.append(("-", f"{text[1:]}·{name}"))
            else:
                parts.append(("+", f"({text})·{name}" if c.re and c.im else f"{text}·{name}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class Output:
    """A result with a JSON payload and a tabular view for markdown and CSV."""

    def __init__(self, payload: dict, title: str, headers: Sequence[str], rows: Sequence[Sequence],
                 notes: Sequence[str] = ()):
        self.payload, self.title, self.headers, self.rows, self.notes = payload, title, headers, rows, notes

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return jsonio.dumps(self.payload) + "\n"
        cells = [[_cell(x) for x in row] for row in self.rows]
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.headers)
            writer.writerows(cells)
            return buf.getvalue()
        lines = [f"## {self.title}", ""]
        lines += [f"- {n}" for n in self.notes]
        if self.notes:
            lines.append("")
        lines.append("| " + " | ".join(self.headers) + " |")
        lines.append("|" + "---|" * len(self.headers))
        lines += ["| " + " | ".join(c.replace("|", "\\|") for c in row) + " |" for row in cells]
        return "\n".join(lines) + "\n"


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, GaussianRational):
        return format_scalar(x)
    if isinstance(x, (list, tuple)):
        return " ".join(_cell(v) for v in x)
    return str(x)


# ---------------------------------------------------------------------------- argument handling

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


_NEGATIVE = re.compile(r"^-[\d.]")


def _join_negative_values(argv: Sequence[str]) -> List[str]:
    """Turn ``--D -1/5+3/5i`` into ``--D=-1/5+3/5i`` so argparse does not read an option."""
    out: List[str] = []
    for tok in argv:
        if out and _NEGATIVE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def scalar(text: str) -> GaussianRational:
    return parse_scalar(text)


def _structure_parent() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    g = p.add_argument_group("structure")
    g.add_argument("--family", choices=("torus", "parallelizable", "I", "II", "III"))
    g.add_argument("--iwasawa", action="store_true", help="the Iwasawa manifold (parallelizable, rho = 1)")
    g.add_argument("--equations", metavar="JSON", help="structure JSON: inline text, @file or a file path")
    g.add_argument("--rho", type=scalar)
    g.add_argument("--lambda", dest="lam", type=scalar)
    g.add_argument("--D", type=scalar)
    g.add_argument("--B", type=scalar)
    g.add_argument("--c", type=scalar)
    g.add_argument("--eps", type=scalar)
    g.add_argument("--sign", type=int, choices=(1, -1))
    g.add_argument("--claimed", metavar="LABEL", help="claimed catalog label for the Lie algebra")
    return p


def _format_parent() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default="md")
    return p


def structure_from_args(args) -> ComplexStructure:
    chosen = [bool(args.family), args.iwasawa, bool(args.equations)]
    if sum(chosen) != 1:
        raise InputError("give exactly one of --family, --iwasawa or --equations")
    if args.iwasawa:
        return build("parallelizable", rho=1)
    if args.equations:
        return jsonio.structure_from_json(jsonio.load_json(args.equations))
    allowed = {"torus": (), "parallelizable": ("rho",), "I": ("rho", "lam", "D"), "II": ("rho", "B", "c"),
               "III": ("eps", "sign")}[args.family]
    params = {}
    for key in ("rho", "lam", "D", "B", "c", "eps", "sign"):
        value = getattr(args, key)
        if value is None:
            continue
        if key not in allowed:
            raise InputError(f"--{'lambda' if key == 'lam' else key} does not apply to family {args.family}")
        params["lambda" if key == "lam" else key] = value
    if args.claimed and args.family in ("I", "II", "III"):
        params["claimed_algebra"] = args.claimed
    return build(args.family, **params)


def _metric_from_arg(text: str, s: ComplexStructure) -> HermitianMetric:
    return jsonio.metric_from_json(jsonio.load_json(text), s)


def default_metric(s: ComplexStructure) -> HermitianMetric:
    """The metric ``l22`` uses when none is given."""
    fam = s.provenance.get("family")
    if fam in ("parallelizable", "torus"):
        return HermitianMetric.iwasawa(1)
    if fam == "I":
        found = balanced_family_i_metrics(s, 1)
        if found:
            return found[0]
        raise ConstraintViolation("this structure admits no balanced metric of the Family I form")
    if fam == "III" and s.provenance.get("eps") == 0:
        return HermitianMetric.balanced_family_iii(s, 1, 1, 1, 0)
    raise NotBalanced("no default balanced metric for this structure; pass --metric")


# ---------------------------------------------------------------------------- subcommands

def cmd_cohomology(args) -> Output:
    s = structure_from_args(args)
    theory = theory_name(args.theory)
    head = {"structure": jsonio.structure_to_json(s), "theory": theory}
    if theory == "froelicher":
        head["r"] = args.r
        if args.r < 1:
            raise InputError("--r must be at least 1")
    single = args.k is not None if theory == "deRham" else (args.p is not None or args.q is not None)
    if single:
        if theory == "deRham":
            if not 0 <= args.k <= 2 * N:
                raise InputError("--k must lie in 0..6")
            grp = de_rham(s, args.k)
        else:
            if args.p is None or args.q is None or not (0 <= args.p <= N and 0 <= args.q <= N):
                raise InputError("give both --p and --q in 0..3")
            grp = froelicher(s, args.r, args.p, args.q) if theory == "froelicher" else \
                space(s, theory, args.p, args.q)
        reps = [format_form(f) for f in grp.representatives]
        payload = {**head, "degrees": list(grp.degrees), "dimension": grp.dimension,
                   "representatives": [jsonio.form_to_json(f) for f in grp.representatives]}
        title = f"{theory} {tuple(grp.degrees)}: dimension {grp.dimension}"
        return Output(payload, title, ["#", "representative"], [[i + 1, r] for i, r in enumerate(reps)])
    if theory == "deRham":
        betti = list(s.betti_numbers())
        return Output({**head, "dimensions": betti}, "de Rham Betti numbers",
                      ["k"] + [str(k) for k in range(2 * N + 1)], [["b_k"] + betti])
    table = dimension_table(s, theory, args.r)
    return Output({**head, "table": table}, f"{theory} dimensions (rows p, columns q)",
                  ["p\\q"] + [str(q) for q in range(N + 1)], [[p] + table[p] for p in range(N + 1)])


def cmd_invariants(args) -> Output:
    s = structure_from_args(args)
    rep = invariant_report(s)
    payload = {"structure": jsonio.structure_to_json(s), **rep.to_json()}
    rows = [[f"f_{k}", v] for k, v in enumerate(rep.f)]
    rows += [[f"k_{r}", v] for r, v in enumerate(rep.k_triple, start=1)]
    rows.append(["ddbarLemma", rep.ddbar_lemma])
    rows += [[f"certificate_r{r}", list(c.as_tuple())] for r, c in enumerate(rep.certificates, start=1)]
    notes = ["certificate columns: dim Z^{1,1}, h^BC_{1,1}, b_2, dim E_r^{0,2}, dim coker"]
    return Output(payload, "∂∂̄ invariants", ["quantity", "value"], rows, notes)


def cmd_metric(args) -> Output:
    s = structure_from_args(args)
    m = _metric_from_arg(args.metric, s)
    cls = classify_metric(s, m)
    factor = conformal_factor(s, m) if cls.balanced and not s.d(Form.monomial((1, 2, 3), ())) else None
    payload = {"structure": jsonio.structure_to_json(s), "metric": jsonio.metric_to_json(m),
               "classification": cls.to_json(),
               "conformalFactor": None if factor is None else format_scalar(factor)}
    rows = [[k, v] for k, v in cls.to_json().items()] + [["conformalFactor", factor]]
    return Output(payload, "metric classification", ["property", "value"], rows)


def cmd_l22(args) -> Output:
    s = structure_from_args(args)
    m = _metric_from_arg(args.metric, s) if args.metric else default_metric(s)
    mod = l22(s, m)
    payload = {"structure": jsonio.structure_to_json(s), "metric": jsonio.metric_to_json(m),
               "dimension": mod.dimension, "basis": [jsonio.form_to_json(f) for f in mod.basis]}
    return Output(payload, f"L^{{2,2}}: dimension {mod.dimension}", ["#", "basis form"],
                  [[i + 1, format_form(f)] for i, f in enumerate(mod.basis)])


def _split(text: str) -> List[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def cmd_sweep(args) -> Output:
    if args.request:
        req = jsonio.load_json(args.request)
        if not isinstance(req, dict):
            raise InputError("a sweep request must be a JSON object")
        curve, samples = req.get("curve"), req.get("samples")
        quantities, rule = req.get("quantities"), req.get("metricRule")
        if not isinstance(samples, list) or not isinstance(quantities, list):
            raise InputError("a sweep request needs 'samples' and 'quantities' lists")
        samples = [jsonio.scalar_from_json(x) for x in samples]
    else:
        if not (args.curve and args.samples and args.quantities):
            raise InputError("give --curve, --samples and --quantities, or --request")
        curve, rule = args.curve, args.metric_rule
        samples = [parse_scalar(x) for x in _split(args.samples)]
        quantities = _split(args.quantities)
    table = sweep(curve, samples, quantities, rule, workers=args.workers)
    rows = []
    for row in table.rows:
        vals = [row.values.get(q) for q in table.quantities]
        err = f"{row.error.code}: {row.error}" if row.error else ""
        rows.append([format_scalar(GaussianRational(row.a)), row.on_wall] + vals + [err])
    return Output(table.to_json(), f"sweep along {table.curve} (metric rule {table.metric_rule})",
                  ["a", "wall"] + table.quantities + ["error"], rows)


def cmd_report(args) -> Output:
    rows = report(args.scope, args.witness_file)
    payload = {"scope": args.scope, "columns": list(COLUMNS), "rows": [r.to_json() for r in rows],
               "allMatch": all(r.match for r in rows)}
    table = []
    for r in rows:
        witness = " ".join(f"{k}={v}" for k, v in r.witness.items())
        flags = " ".join(sorted(k for k, v in r.flags.items() if v))
        table.append([r.algebra, r.index, r.family, witness, *r.computed, r.match,
                      "" if r.balanced_exists is None else r.balanced_exists, flags])
    bad = [f"{r.algebra} row {r.index}: {m['cell']} expected {m['expected']} got {m['computed']}"
           for r in rows for m in r.mismatches]
    return Output(payload, f"Bott-Chern report ({args.scope}): {len(rows)} rows",
                  ["algebra", "row", "family", "witness", *COLUMNS, "match", "balancedExists", "flags"],
                  table, bad)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bcnil", description="Exact Bott-Chern, Aeppli and Frölicher computations "
                     "on invariant complex structures of 6-dimensional nilmanifolds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    st, fmt = _structure_parent(), _format_parent()

    p = sub.add_parser("cohomology", parents=[st, fmt], help="cohomology dimensions and representatives")
    p.add_argument("--theory", default="bottChern", help=f"one of {', '.join(THEORIES)} (or bc, a, dr)")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int, help="degree for de Rham")
    p.add_argument("--r", type=int, default=1, help="page of the Frölicher spectral sequence")
    p.set_defaults(run=cmd_cohomology)

    p = sub.add_parser("invariants", parents=[st, fmt], help="f_k, k_r and the Z^{1,1} certificate")
    p.set_defaults(run=cmd_invariants)

    p = sub.add_parser("metric", parents=[st, fmt], help="classify a Hermitian metric")
    p.add_argument("--metric", required=True, metavar="JSON")
    p.set_defaults(run=cmd_metric)

    p = sub.add_parser("l22", parents=[st, fmt], help="the L^{2,2} moduli space of a balanced metric")
    p.add_argument("--metric", metavar="JSON", help="defaults to a standard balanced metric of the family")
    p.set_defaults(run=cmd_l22)

    p = sub.add_parser("sweep", parents=[fmt], help="evaluate quantities along a deformation curve")
    p.add_argument("--curve", choices=CURVES)
    p.add_argument("--samples", help="comma-separated parameter values")
    p.add_argument("--quantities", help="comma-separated selectors, e.g. f2,k1,bc11,l22")
    p.add_argument("--metric-rule", choices=sorted(METRIC_RULES))
    p.add_argument("--request", metavar="JSON", help="curve, samples, quantities and metricRule as JSON")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_sweep)

    p = sub.add_parser("report", parents=[fmt], help="recompute the Bott-Chern tables from stored witnesses")
    p.add_argument("--scope", default="all", help="all, table1 or an algebra label such as h4")
    p.add_argument("--witness-file", help="alternative witness table")
    p.set_defaults(run=cmd_report)
    return parser


def _requested_format(argv: Sequence[str]) -> str:
    for i, tok in enumerate(argv):
        if tok.startswith("--format="):
            return tok.split("=", 1)[1]
        if tok == "--format" and i + 1 < len(argv):
            return argv[i + 1]
    return "md"


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    fmt = _requested_format(argv)
    try:
        args = build_parser().parse_args(argv)
        out = args.run(args)
    except BcnilError as exc:
        code = 3 if exc.precondition else 2
        if fmt == "json":
            sys.stdout.write(jsonio.dumps({"error": {"code": exc.code, "message": str(exc)}}) + "\n")
        else:
            sys.stderr.write(f"bcnil: {exc.code}: {exc}\n")
        return code
    except ValueError as exc:
        if fmt == "json":
            sys.stdout.write(jsonio.dumps({"error": {"code": InputError.code, "message": str(exc)}}) + "\n")
        else:
            sys.stderr.write(f"bcnil: {InputError.code}: {exc}\n")
        return 2
    sys.stdout.write(out.render(args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
