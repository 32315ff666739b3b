"""Small quantum homology ``QH_*(M; Λ)`` of a catalog manifold."""

from __future__ import annotations

import weakref
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import IncompleteTable, ModelMismatch, NonHomogeneous, NotAUnit, ParseError, ZeroElement
from .gw import gw3
from .homology import HomologyClass, ManifoldModel
from .novikov import ONE, ZERO, NovikovScalar, format_monomial, parse_monomial_factors, split_terms

__all__ = [
    "QuantumElement",
    "qmul",
    "identity_element",
    "try_inverse",
    "unit_order",
    "basis_product",
    "multiplication_table",
    "parse_element",
    "DEFAULT_ORDER_BOUND",
]

DEFAULT_ORDER_BOUND = 64


class QuantumElement:
    """Finite sum ``Σ e_i ⊗ λ_i`` over one model. Immutable."""

    __slots__ = ("model", "_terms", "_hash")

    def __init__(self, model: ManifoldModel, terms: Mapping[int, NovikovScalar] | None = None):
        self.model = model
        clean = {}
        for i, s in (terms or {}).items():
            if not 0 <= i < model.rank:
                raise ParseError(f"basis index {i} out of range for {model.name}")
            if isinstance(s, int):
                s = NovikovScalar.constant(s)
            if s:
                clean[i] = s
        self._terms = clean
        self._hash = None

    @classmethod
    def from_class(cls, a: HomologyClass, scalar: NovikovScalar = ONE) -> QuantumElement:
        return cls(a.model, {i: scalar * c for i, c in a.coefficients.items()})

    @classmethod
    def basis(cls, model: ManifoldModel, index: int, scalar: NovikovScalar = ONE) -> QuantumElement:
        return cls(model, {index: scalar})

    @property
    def terms(self) -> dict[int, NovikovScalar]:
        return dict(self._terms)

    def coefficient(self, index: int) -> NovikovScalar:
        return self._terms.get(index, ZERO)

    def monomials(self) -> Iterator[tuple[int, int, int, Fraction]]:
        """Yield ``(basis index, coef, q_exp, t_exp)`` in canonical order."""
        for i in sorted(self._terms):
            for (k, s), c in self._terms[i].items():
                yield i, c, k, s

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: QuantumElement) -> None:
        if other.model is not self.model:
            raise ModelMismatch(f"{self.model.name} vs {other.model.name}")

    def __add__(self, other: QuantumElement) -> QuantumElement:
        self._check(other)
        out = dict(self._terms)
        for i, s in other._terms.items():
            out[i] = out.get(i, ZERO) + s
        return QuantumElement(self.model, out)

    def __neg__(self) -> QuantumElement:
        return QuantumElement(self.model, {i: -s for i, s in self._terms.items()})

    def __sub__(self, other: QuantumElement) -> QuantumElement:
        return self + (-other)

    def scale(self, scalar: NovikovScalar | int) -> QuantumElement:
        return QuantumElement(self.model, {i: s * scalar for i, s in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, QuantumElement):
            return qmul(self, other)
        if isinstance(other, (NovikovScalar, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (NovikovScalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> QuantumElement:
        if k < 0:
            return try_inverse(self) ** (-k)
        out = identity_element(self.model)
        for _ in range(k):
            out = qmul(out, self)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuantumElement):
            return NotImplemented
        return self.model is other.model and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((id(self.model), frozenset(self._terms.items())))
        return self._hash

    def term_degrees(self) -> set[int]:
        return {self.model.degree(i) + 2 * k for i, _, k, _ in self.monomials()}

    def is_homogeneous(self) -> bool:
        return len(self.term_degrees()) <= 1

    def degree(self) -> int:
        degs = self.term_degrees()
        if not degs:
            raise ZeroElement("degree of the zero element is undefined")
        if len(degs) > 1:
            raise NonHomogeneous(f"element mixes degrees {sorted(degs)}")
        return next(iter(degs))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self.model.basis
        return " + ".join(
            format_monomial(c, k, s, generator=names[i].name) for i, c, k, s in self.monomials()
        )

    def __repr__(self) -> str:
        return f"QuantumElement({self.model.name}: {self})"


def identity_element(M: ManifoldModel) -> QuantumElement:
    return QuantumElement(M, {M.fundamental_index: ONE})


_PRODUCTS: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def _check_complete(M: ManifoldModel, c1: int) -> None:
    if M.aspherical or c1 <= M.chern_bound:
        return
    if not any(A.c1 == c1 for A in M.spherical_classes):
        raise IncompleteTable(
            f"{M.name}: product needs classes with c1={c1}, but the table is only "
            f"complete through c1={M.chern_bound}"
        )


def basis_product(M: ManifoldModel, i: int, j: int) -> dict[int, NovikovScalar]:
    """Coordinates of ``e_i * e_j``; cached per model."""
    cache = _PRODUCTS.setdefault(M, {})
    key = (i, j)
    if key in cache:
        return cache[key]
    top = 4 * M.n - M.degree(i) - M.degree(j)
    out: dict[int, NovikovScalar] = {}
    for v in range(M.rank):
        need = top - M.degree(v)
        if need % 2:
            continue
        _check_complete(M, need // 2)
        for A in M.spherical_classes:
            if A.c1 != need // 2:
                continue
            g = gw3(M, A, i, j, v)
            if not g:
                continue
            weight = NovikovScalar.monomial(g, -A.c1, -A.omega)
            for k, d in enumerate(M.dual_matrix[v]):
                if d:
                    out[k] = out.get(k, ZERO) + weight * d
    cache[key] = {k: s for k, s in out.items() if s}
    return cache[key]


def qmul(x: QuantumElement, y: QuantumElement) -> QuantumElement:
    """Quantum product, extended bilinearly over the Novikov ring."""
    if x.model is not y.model:
        raise ModelMismatch(f"{x.model.name} vs {y.model.name}")
    M = x.model
    out: dict[int, NovikovScalar] = {}
    for i, s in x._terms.items():
        for j, r in y._terms.items():
            sr = s * r
            for k, w in basis_product(M, i, j).items():
                out[k] = out.get(k, ZERO) + w * sr
    return QuantumElement(M, out)


def multiplication_table(M: ManifoldModel) -> list[tuple[int, int, QuantumElement]]:
    return [
        (i, j, QuantumElement(M, basis_product(M, i, j)))
        for i in range(M.rank)
        for j in range(M.rank)
    ]


def try_inverse(x: QuantumElement) -> QuantumElement:
    """Inverse of a homogeneous unit, found by elimination with monomial pivots.

    The candidate is always checked by multiplication; failure to find one
    that verifies raises :class:`NotAUnit`.
    """
    M = x.model
    if x.is_zero():
        raise NotAUnit("zero is not a unit")
    d = x.degree()
    target = 4 * M.n - d
    cols = [j for j in range(M.rank) if (target - M.degree(j)) % 2 == 0]
    shifts = {j: NovikovScalar.monomial(1, (target - M.degree(j)) // 2, 0) for j in cols}
    # matrix[k][c]: coefficient of e_k in x * (e_j q^shift)
    matrix = [[ZERO] * len(cols) for _ in range(M.rank)]
    for c, j in enumerate(cols):
        col = qmul(x, QuantumElement.basis(M, j, shifts[j]))
        for k, s in col._terms.items():
            matrix[k][c] = s
    rhs = [ZERO] * M.rank
    rhs[M.fundamental_index] = ONE

    pivot_row_of: dict[int, int] = {}
    used_rows: set[int] = set()
    for c in range(len(cols)):
        p = next(
            (r for r in range(M.rank) if r not in used_rows and matrix[r][c].is_unit()),
            None,
        )
        if p is None:
            continue
        used_rows.add(p)
        pivot_row_of[c] = p
        inv = matrix[p][c].unit_inverse()
        for r in range(M.rank):
            if r == p or not matrix[r][c]:
                continue
            f = matrix[r][c] * inv
            matrix[r] = [a - f * b for a, b in zip(matrix[r], matrix[p])]
            rhs[r] = rhs[r] - f * rhs[p]
    for r in range(M.rank):
        if r not in used_rows and rhs[r]:
            raise NotAUnit(f"{x} has no inverse: the linear system is inconsistent")

    terms = {}
    for c, p in pivot_row_of.items():
        sol = rhs[p] * matrix[p][c].unit_inverse()
        if sol:
            terms[cols[c]] = shifts[cols[c]] * sol
    y = QuantumElement(M, terms)
    if qmul(x, y) != identity_element(M):
        raise NotAUnit(f"{x}: elimination found no verified inverse")
    return y


def unit_order(x: QuantumElement, bound: int = DEFAULT_ORDER_BOUND) -> int | None:
    """Smallest ``k <= bound`` with ``x^k == 1``; ``None`` if there is none."""
    if bound < 1:
        raise ValueError("bound must be positive")
    try_inverse(x)
    one = identity_element(x.model)
    power = x
    for k in range(1, bound + 1):
        if power == one:
            return k
        power = qmul(power, x)
    return None


def _generator_index(M: ManifoldModel, name: str) -> int:
    lookup = M._name_index
    if name in lookup:
        return lookup[name]
    if name.startswith("[") and name.endswith("]") and name[1:-1] in lookup:
        return lookup[name[1:-1]]
    if f"[{name}]" in lookup:
        return lookup[f"[{name}]"]
    raise ParseError(f"{M.name} has no generator {name!r}")


def parse_element(M: ManifoldModel, text: str) -> QuantumElement:
    """Parse ``str(QuantumElement)`` output.

    Each term is ``*``-joined factors (integer, ``q^k``, ``t^p/q`` and exactly
    one generator name).  The scalar-first form ``2*q*t^1/2 [pt]`` is accepted
    as well.
    """
    out = QuantumElement(M)
    for term in split_terms(text):
        if term == "0":
            continue
        factors = term.split("*")
        if " " in factors[-1]:
            head, gen = factors[-1].rsplit(" ", 1)
            factors = factors[:-1] + [head, gen]
        coef, q, t, rest = parse_monomial_factors(factors)
        if len(rest) != 1:
            raise ParseError(f"term {term!r} must name exactly one generator")
        idx = _generator_index(M, rest[0])
        out = out + QuantumElement(M, {idx: NovikovScalar.monomial(coef, q, t)})
    return out
