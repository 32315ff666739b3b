"""Exact arithmetic in the coefficient ring Z[t^Q][q, q^-1].

A scalar is a finite sum of monomials ``c * q^k * t^s`` with ``c`` a nonzero
integer, ``k`` an integer and ``s`` an exact rational.  ``q`` has degree 2,
``t`` has degree 0.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import MixedDegrees, ParseError, ZeroElement

Exponent = tuple[int, Fraction]

__all__ = [
    "NovikovScalar",
    "nv_add",
    "nv_mul",
    "nv_degree",
    "parse_scalar",
    "format_monomial",
    "ZERO",
    "ONE",
    "Q",
    "T",
]


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("t-exponents must be exact (int, Fraction or 'p/q' string)")
    return Fraction(value)


class NovikovScalar:
    """Immutable finite-support element of the Novikov ring.

    ``terms`` maps ``(q_exp, t_exp)`` to a nonzero integer coefficient.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, object], int] | None = None):
        clean: dict[Exponent, int] = {}
        for (k, s), c in (terms or {}).items():
            if not isinstance(c, int):
                raise TypeError(f"coefficient must be int, got {type(c).__name__}")
            if not isinstance(k, int):
                raise TypeError("q-exponent must be int")
            key = (k, _as_fraction(s))
            total = clean.get(key, 0) + c
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, coef: int = 1, q: int = 0, t=0) -> NovikovScalar:
        return cls({(q, t): coef})

    @classmethod
    def constant(cls, c: int) -> NovikovScalar:
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, int]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Units of the finite-support ring are exactly ``±q^k t^s``."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def q_exponents(self) -> set[int]:
        return {k for k, _ in self._terms}

    def t_exponents(self) -> set[Fraction]:
        return {s for _, s in self._terms}

    # arithmetic

    def __add__(self, other: NovikovScalar | int) -> NovikovScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        merged = dict(self._terms)
        for key, c in other._terms.items():
            merged[key] = merged.get(key, 0) + c
        return NovikovScalar(merged)

    __radd__ = __add__

    def __neg__(self) -> NovikovScalar:
        return NovikovScalar({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: NovikovScalar | int) -> NovikovScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: NovikovScalar | int) -> NovikovScalar:
        return _coerce(other) - self

    def __mul__(self, other: NovikovScalar | int) -> NovikovScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for (k1, s1), c1 in self._terms.items():
            for (k2, s2), c2 in other._terms.items():
                key = (k1 + k2, s1 + s2)
                out[key] = out.get(key, 0) + c1 * c2
        return NovikovScalar(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> NovikovScalar:
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def unit_inverse(self) -> NovikovScalar:
        if not self.is_unit():
            raise ArithmeticError(f"{self} is not a unit of the Novikov ring")
        (k, s), c = next(iter(self._terms.items()))
        return NovikovScalar({(-k, -s): c})

    def exact_div(self, unit: NovikovScalar) -> NovikovScalar:
        return self * unit.unit_inverse()

    def degree(self) -> int:
        if not self._terms:
            raise ZeroElement("degree of the zero scalar is undefined")
        qs = self.q_exponents()
        if len(qs) != 1:
            raise MixedDegrees(f"terms with q-exponents {sorted(qs)}")
        return 2 * next(iter(qs))

    def scale_exponents(self, factor: int) -> NovikovScalar:
        """Substitute ``q -> q^factor`` and ``t -> t^factor``."""
        return NovikovScalar({(k * factor, s * factor): c for (k, s), c in self._terms.items()})

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = NovikovScalar.constant(other)
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"NovikovScalar({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(format_monomial(c, k, s) for (k, s), c in self.items())


def _coerce(value):
    if isinstance(value, NovikovScalar):
        return value
    if isinstance(value, int):
        return NovikovScalar.constant(value)
    return NotImplemented


def _format_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def format_monomial(coef: int, q: int, t: Fraction, generator: str | None = None) -> str:
    """Render ``coef * generator * q^q * t^t``.

    A coefficient of ±1 is elided whenever some other factor is printed.
    """
    factors = []
    if generator is not None:
        factors.append(generator)
    if q:
        factors.append("q" if q == 1 else f"q^{q}")
    if t:
        factors.append("t" if t == 1 else f"t^{_format_rational(Fraction(t))}")
    if not factors:
        return str(coef)
    body = "*".join(factors)
    if coef == 1:
        return body
    if coef == -1:
        return "-" + body
    return f"{coef}*{body}"


_INT = re.compile(r"[+-]?\d+")
_Q = re.compile(r"q(?:\^([+-]?\d+))?")
_T = re.compile(r"t(?:\^([+-]?\d+(?:/\d+)?))?")


def parse_monomial_factors(factors: Iterable[str]) -> tuple[int, int, Fraction, list[str]]:
    """Split ``*``-factors into (coef, q_exp, t_exp, leftovers).

    Leftover factors are returned untouched so element parsers can treat them
    as generator names.
    """
    coef, q, t = 1, 0, Fraction(0)
    rest: list[str] = []
    for raw in factors:
        f = raw.strip()
        if not f:
            raise ParseError("empty factor")
        neg = False
        if f.startswith("-") and not _INT.fullmatch(f):
            neg, f = True, f[1:].strip()
        if neg:
            coef = -coef
        if _INT.fullmatch(f):
            coef *= int(f)
        elif m := _Q.fullmatch(f):
            q += int(m.group(1)) if m.group(1) else 1
        elif m := _T.fullmatch(f):
            t += Fraction(m.group(1)) if m.group(1) else 1
        else:
            rest.append(f)
    return coef, q, t, rest


def split_terms(text: str) -> list[str]:
    """Split a sum on ``+`` and binary ``-`` separated by spaces."""
    text = text.strip()
    if not text:
        raise ParseError("empty expression")
    # " - x" is sugar for " + -x"
    text = re.sub(r"\s+-\s+", " + -", text)
    return [p.strip() for p in text.split(" + ")]


def parse_scalar(text: str) -> NovikovScalar:
    """Parse the rendering produced by ``str(NovikovScalar)``."""
    out = ZERO
    for term in split_terms(text):
        if term == "0":
            continue
        coef, q, t, rest = parse_monomial_factors(term.split("*"))
        if rest:
            raise ParseError(f"unexpected factor(s) {rest} in scalar term {term!r}")
        out = out + NovikovScalar.monomial(coef, q, t)
    return out


def nv_add(x: NovikovScalar, y: NovikovScalar) -> NovikovScalar:
    return x + y


def nv_mul(x: NovikovScalar, y: NovikovScalar) -> NovikovScalar:
    return x * y


def nv_degree(x: NovikovScalar) -> int:
    return x.degree()


ZERO = NovikovScalar()
ONE = NovikovScalar.constant(1)
Q = NovikovScalar.monomial(1, 1, 0)
T = NovikovScalar.monomial(1, 0, 1)
