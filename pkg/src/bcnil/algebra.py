"""Gaussian-rational scalars and the bigraded exterior algebra of a complex 3-dimensional
Lie algebra.

A monomial ``ω^{I} ∧ ω^{J̄}`` is stored with its holomorphic indices first and its
antiholomorphic indices second, each block increasing; ``Monomial((1, 3), (1,))`` is
``ω^{13 1̄}``.  Forms are finitely supported maps from monomials to
:class:`GaussianRational` coefficients and never store a zero coefficient.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, List, NamedTuple, Tuple, Union

from .errors import InputError

N = 3  # complex dimension

RationalLike = Union[int, Fraction]


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re + other, self.im)
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re - other, self.im)
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c, 0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        c, d = other.re, other.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return GaussianRational(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus ``|z|^2`` (always rational)."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)
ZERO = GaussianRational(0)
ONE = GaussianRational(1)

_RAT = r"-?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?P<im>[+-]\d+(?:/\d+)?)i|(?P<only_im>{_RAT})i|(?P<only_re>{_RAT}))$"
)


def _parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``rat | rat(+|-)rat i | rat i`` with ``rat := [-]digits[/digits]``.

    >>> parse_scalar("1/2+3/5i")
    GaussianRational(1/2+3/5i)
    >>> parse_scalar("-2i")
    GaussianRational(-2i)
    """
    m = _SCALAR_RE.match(text.strip().replace(" ", ""))
    if m is None:
        raise InputError(f"not a Gaussian-rational scalar: {text!r}")
    if m.group("only_re") is not None:
        return GaussianRational(_parse_rational(m.group("only_re")))
    if m.group("only_im") is not None:
        return GaussianRational(0, _parse_rational(m.group("only_im")))
    return GaussianRational(_parse_rational(m.group("re")), _parse_rational(m.group("im")))


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Inverse of :func:`parse_scalar`; canonical, so equal scalars print equally."""
    if z.im == 0:
        return _format_rational(z.re)
    if z.re == 0:
        return _format_rational(z.im) + "i"
    sign = "+" if z.im > 0 else "-"
    return f"{_format_rational(z.re)}{sign}{_format_rational(abs(z.im))}i"


Scalar = Union[GaussianRational, int, Fraction, str]


# --------------------------------------------------------------------------- monomials

class Monomial(NamedTuple):
    hol: Tuple[int, ...]
    anti: Tuple[int, ...]

    @property
    def bidegree(self) -> Tuple[int, int]:
        return len(self.hol), len(self.anti)

    @property
    def degree(self) -> int:
        return len(self.hol) + len(self.anti)

    def slots(self) -> Tuple[int, ...]:
        # holomorphic j -> j, antiholomorphic j -> j + 3; canonical order is ascending
        return self.hol + tuple(j + N for j in self.anti)

    def __str__(self):
        hol = "".join(map(str, self.hol))
        anti = "".join(f"{j}'" for j in self.anti)
        if not hol and not anti:
            return "1"
        return "w" + hol + ("_" + anti if anti else "")


def _from_slots(slots: Iterable[int]) -> Monomial:
    slots = list(slots)
    return Monomial(tuple(s for s in slots if s <= N), tuple(s - N for s in slots if s > N))


def sort_sign(seq: List[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the permutation sorting ``seq`` and the sorted tuple; sign 0 on repeats."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


def monomial_wedge(a: Monomial, b: Monomial) -> Tuple[int, Monomial]:
    sign, slots = sort_sign(list(a.slots()) + list(b.slots()))
    if sign == 0:
        return 0, a
    return sign, _from_slots(slots)


def monomial_conjugate(m: Monomial) -> Tuple[int, Monomial]:
    """``conj(ω^I ∧ ω^{J̄}) = ω^{Ī} ∧ ω^{J}``, returned as (sign, canonical monomial)."""
    seq = [j + N for j in m.hol] + list(m.anti)
    sign, slots = sort_sign(seq)
    return sign, _from_slots(slots)


def basis(p: int, q: int) -> List[Monomial]:
    """Canonical monomial basis of Λ^{p,q}; empty outside 0 <= p, q <= 3."""
    if not (0 <= p <= N and 0 <= q <= N):
        return []
    holo = list(combinations(range(1, N + 1), p))
    anti = list(combinations(range(1, N + 1), q))
    return [Monomial(h, a) for h in holo for a in anti]


def total_basis(k: int) -> List[Monomial]:
    """Basis of Λ^k ordered by decreasing holomorphic degree: Λ^{k,0}, Λ^{k-1,1}, ..."""
    out: List[Monomial] = []
    for p in range(min(k, N), -1, -1):
        out.extend(basis(p, k - p))
    return out


def dim(p: int, q: int) -> int:
    if not (0 <= p <= N and 0 <= q <= N):
        return 0
    return comb(N, p) * comb(N, q)


TOP = Monomial((1, 2, 3), (1, 2, 3))


def complement(m: Monomial) -> Tuple[int, Monomial]:
    """The monomial ``c`` with ``m ∧ c = ±ω^{123 1̄2̄3̄}``, and that sign."""
    c = Monomial(tuple(j for j in range(1, N + 1) if j not in m.hol),
                 tuple(j for j in range(1, N + 1) if j not in m.anti))
    sign, _ = monomial_wedge(m, c)
    return sign, c


# --------------------------------------------------------------------------- forms

class Form:
    """Finite linear combination of monomials with Gaussian-rational coefficients.

    Immutable by convention: arithmetic returns new forms.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, GaussianRational] = {}
        for mono, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                clean[mono] = c
        self.terms = clean

    @classmethod
    def monomial(cls, hol: Iterable[int] = (), anti: Iterable[int] = (), coeff: Scalar = 1) -> "Form":
        """Form ``coeff · ω^{hol} ∧ ω^{anti-bar}`` with indices written in any order."""
        hol, anti = list(hol), list(anti)
        sign, slots = sort_sign(hol + [j + N for j in anti])
        if sign == 0:
            return cls()
        return cls({_from_slots(slots): GaussianRational.coerce(coeff) * sign})

    @classmethod
    def from_vector(cls, monomials: List[Monomial], vector) -> "Form":
        return cls({m: c for m, c in zip(monomials, vector) if c})

    def coefficient(self, mono: Monomial) -> GaussianRational:
        return self.terms.get(mono, ZERO)

    def to_vector(self, monomials: List[Monomial]) -> List[GaussianRational]:
        index = {m: i for i, m in enumerate(monomials)}
        vec = [ZERO] * len(monomials)
        for m, c in self.terms.items():
            if m not in index:
                raise ValueError(f"monomial {m} outside the requested basis")
            vec[index[m]] = c
        return vec

    def bidegrees(self) -> List[Tuple[int, int]]:
        return sorted({m.bidegree for m in self.terms})

    def component(self, p: int, q: int) -> "Form":
        return Form({m: c for m, c in self.terms.items() if m.bidegree == (p, q)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return Form(out)

    def __neg__(self) -> "Form":
        return Form({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "Form":
        if isinstance(scalar, Form):
            return NotImplemented
        s = GaussianRational.coerce(scalar)
        return Form({m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def conjugate(self) -> "Form":
        return conjugate(self)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[Tuple[Monomial, GaussianRational]]:
        return iter(sorted(self.terms.items(), key=lambda kv: (kv[0].degree, -len(kv[0].hol), kv[0])))

    def __repr__(self):
        return f"Form({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{m}" for m, c in self)


def omega(hol: str = "", anti: str = "", coeff: Scalar = 1) -> Form:
    """Shorthand: ``omega("13", "2")`` is ``ω^{13 2̄}``."""
    return Form.monomial([int(ch) for ch in hol], [int(ch) for ch in anti], coeff)


def wedge(a: Form, b: Form) -> Form:
    out: Dict[Monomial, GaussianRational] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = monomial_wedge(ma, mb)
            if sign:
                c = ca * cb
                out[m] = out.get(m, ZERO) + (c if sign > 0 else -c)
    return Form(out)


def conjugate(a: Form) -> Form:
    out = {}
    for m, c in a.terms.items():
        sign, mc = monomial_conjugate(m)
        out[mc] = c.conjugate() * sign
    return Form(out)


def wedge_all(forms: Iterable[Form]) -> Form:
    result = Form({Monomial((), ()): ONE})
    for f in forms:
        result = wedge(result, f)
    return result
