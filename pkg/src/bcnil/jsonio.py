"""JSON encodings of scalars, forms, structures and metrics.

Scalars are strings in the grammar of :func:`bcnil.algebra.parse_scalar`; plain JSON
integers are also accepted on input.  A form is a list of ``{"hol", "anti", "c"}`` terms.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

from .algebra import Form, GaussianRational, format_scalar, parse_scalar
from .errors import InputError
from .hermitian import HermitianMetric
from .structures import ComplexStructure, build, raw

_FAMILY_PARAMS = {
    "torus": (),
    "parallelizable": ("rho",),
    "I": ("rho", "lambda", "D"),
    "II": ("rho", "B", "c"),
    "III": ("eps", "sign"),
}


def scalar_from_json(value: Any) -> GaussianRational:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InputError(f"scalars must be strings or integers, got {value!r}")
    return GaussianRational.coerce(value) if isinstance(value, int) else parse_scalar(value)


def scalar_to_json(value) -> str:
    return format_scalar(GaussianRational.coerce(value))


def form_to_json(form: Form) -> list:
    return [{"hol": list(m.hol), "anti": list(m.anti), "c": format_scalar(c)} for m, c in form]


def form_from_json(terms: Any) -> Form:
    if not isinstance(terms, list):
        raise InputError("a form must be a list of terms")
    out = Form()
    for t in terms:
        if not isinstance(t, dict) or not {"hol", "anti", "c"} <= set(t):
            raise InputError(f"malformed term {t!r}")
        hol, anti = t["hol"], t["anti"]
        for idx in list(hol) + list(anti):
            if not isinstance(idx, int) or not 1 <= idx <= 3:
                raise InputError(f"index {idx!r} outside 1..3")
        if len(set(hol)) != len(hol) or len(set(anti)) != len(anti):
            raise InputError(f"repeated index in term {t!r}")
        out = out + Form.monomial(hol, anti, scalar_from_json(t["c"]))
    return out


# ---------------------------------------------------------------------------- structures

def structure_to_json(s: ComplexStructure) -> dict:
    prov = s.provenance
    family = prov.get("family", "raw")
    if family == "raw":
        out: dict = {"provenance": "raw",
                     "d": {"w2": form_to_json(s.equations[1]), "w3": form_to_json(s.equations[2])}}
    else:
        body = {"family": family}
        for key in _FAMILY_PARAMS[family]:
            body[key] = str(prov[key]) if key == "sign" else scalar_to_json(prov[key])
        out = {"provenance": body}
    if s.claimed_algebra is not None:
        out["claimedAlgebra"] = s.claimed_algebra
    return out


def structure_from_json(obj: Any) -> ComplexStructure:
    if not isinstance(obj, dict) or "provenance" not in obj:
        raise InputError("structure JSON needs a 'provenance' field")
    claimed = obj.get("claimedAlgebra")
    prov = obj["provenance"]
    if prov == "raw":
        d = obj.get("d")
        if not isinstance(d, dict):
            raise InputError("raw structures need a 'd' object with w2 and w3")
        extra = set(d) - {"w1", "w2", "w3"}
        if extra:
            raise InputError(f"unknown equation keys {sorted(extra)}")
        d1 = form_from_json(d["w1"]) if "w1" in d else None
        return raw(form_from_json(d.get("w2", [])), form_from_json(d.get("w3", [])), claimed, d1)
    if not isinstance(prov, dict) or prov.get("family") not in _FAMILY_PARAMS:
        raise InputError(f"unknown provenance {prov!r}")
    family = prov["family"]
    params = {}
    for key in _FAMILY_PARAMS[family]:
        if key not in prov:
            continue
        if key == "sign":
            sign = prov[key]
            if str(sign) not in ("1", "-1", "+1", "+", "-"):
                raise InputError(f"sign must be +1 or -1, got {sign!r}")
            params[key] = -1 if str(sign).startswith("-") else 1
        else:
            params[key] = scalar_from_json(prov[key])
    if claimed is not None and family in ("I", "II", "III"):
        params["claimed_algebra"] = claimed
    return build(family, **params)


# ---------------------------------------------------------------------------- metrics

def metric_to_json(m: HermitianMetric) -> dict:
    prov = m.provenance
    fam = prov.get("family")
    keys = {"balancedI": ("s2", "t2", "u"), "balancedIII": ("r2", "s2", "t2", "v"), "iwasawa": ("t2",)}
    if fam in keys:
        return {"family": fam, **{k: scalar_to_json(prov[k]) for k in keys[fam]}}
    return {"H": [[scalar_to_json(x) for x in row] for row in m.H]}


def metric_from_json(obj: Any, structure: Optional[ComplexStructure] = None) -> HermitianMetric:
    if not isinstance(obj, dict):
        raise InputError("metric JSON must be an object")
    if "H" in obj:
        rows = obj["H"]
        if not isinstance(rows, list) or len(rows) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in rows):
            raise InputError("H must be a 3x3 array")
        return HermitianMetric([[scalar_from_json(x) for x in r] for r in rows])
    fam = obj.get("family")

    def need(*keys):
        missing = [k for k in keys if k not in obj]
        if missing:
            raise InputError(f"metric family {fam!r} needs {missing}")
        return [scalar_from_json(obj[k]) for k in keys]

    if fam == "iwasawa":
        return HermitianMetric.iwasawa(*need("t2"))
    if fam in ("balancedI", "balancedIII"):
        if structure is None:
            raise InputError(f"metric family {fam!r} needs a structure")
        if fam == "balancedI":
            return HermitianMetric.balanced_family_i(structure, *need("s2", "t2", "u"))
        return HermitianMetric.balanced_family_iii(structure, *need("r2", "s2", "t2", "v"))
    raise InputError(f"unknown metric family {fam!r}")


def load_json(source: Union[str, Path]) -> Any:
    """Parse inline JSON text, or read a file (``@path`` or a plain path)."""
    text = str(source)
    try:
        if text.lstrip().startswith(("{", "[")):
            return json.loads(text)
        path = Path(text[1:] if text.startswith("@") else text)
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {text!r}: {exc}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
