"""Torsion-free graded homology of catalog manifolds.

A :class:`ManifoldModel` is the algebraic shadow of a closed symplectic
manifold: an ordered homology basis with degrees, the integer intersection
pairing, the monotonicity constant and the list of spherical classes with
their first Chern number and symplectic area.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import TYPE_CHECKING, Any, Mapping

from .errors import (
    AsphericalViolation,
    ModelMismatch,
    MonotonicityViolation,
    NonUnimodularPairing,
    ParseError,
)

if TYPE_CHECKING:
    from .gw import GWTable

__all__ = [
    "Generator",
    "SphericalClass",
    "ManifoldModel",
    "HomologyClass",
    "load_manifold",
    "intersect",
    "dual_basis",
    "rational_to_json",
    "rational_from_json",
]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


@dataclass(frozen=True)
class SphericalClass:
    name: str
    c1: int
    omega: Fraction

    @property
    def is_zero(self) -> bool:
        return self.c1 == 0 and self.omega == 0


@dataclass(frozen=True, eq=False)
class ManifoldModel:
    """Immutable once built; compared by identity.

    ``monotone_lambda`` is ``None`` for aspherical manifolds.
    """

    name: str
    dim: int
    basis: tuple[Generator, ...]
    pairing: tuple[tuple[int, ...], ...]
    monotone_lambda: Fraction | None
    spherical_classes: tuple[SphericalClass, ...]
    gw: GWTable = field(repr=False)
    # largest Chern number through which spherical_classes is exhaustive
    complete_through_c1: int | None = None

    @property
    def n(self) -> int:
        return self.dim // 2

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def aspherical(self) -> bool:
        return self.monotone_lambda is None

    def degree(self, index: int) -> int:
        return self.basis[index].degree

    def index_of(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise ParseError(f"{self.name} has no generator named {name!r}") from None

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {g.name: i for i, g in enumerate(self.basis)}

    @property
    def chern_bound(self) -> int:
        return self.dim if self.complete_through_c1 is None else self.complete_through_c1

    @cached_property
    def classes_by_name(self) -> dict[str, SphericalClass]:
        return {A.name: A for A in self.spherical_classes}

    @cached_property
    def zero_class(self) -> SphericalClass:
        return next(A for A in self.spherical_classes if A.is_zero)

    @cached_property
    def fundamental_index(self) -> int:
        return next(i for i, g in enumerate(self.basis) if g.degree == self.dim)

    @cached_property
    def dual_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Row ``v`` holds the coordinates of the dual generator ``e*_v``."""
        return _integer_inverse(self.pairing, self.name)

    def generator(self, index: int) -> HomologyClass:
        return HomologyClass(self, {index: 1})

    def __repr__(self) -> str:
        return f"ManifoldModel({self.name!r}, dim={self.dim}, rank={self.rank})"

    def to_descriptor(self) -> dict[str, Any]:
        """Inverse of :func:`load_manifold`."""
        pairing = [
            [i, j, v]
            for i, row in enumerate(self.pairing)
            for j, v in enumerate(row)
            if v
        ]
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": [{"name": g.name, "degree": g.degree} for g in self.basis],
            "pairing": pairing,
            "monotone_lambda": (
                "aspherical"
                if self.monotone_lambda is None
                else rational_to_json(self.monotone_lambda)
            ),
            "spherical_classes": [
                {"name": A.name, "c1": A.c1, "omega": rational_to_json(A.omega)}
                for A in self.spherical_classes
            ],
            "gw": self.gw.to_rows(),
            "complete_through_c1": self.chern_bound,
        }


class HomologyClass:
    """Integer combination of basis generators of one model."""

    __slots__ = ("model", "coefficients")

    def __init__(self, model: ManifoldModel, coefficients: Mapping[int, int]):
        self.model = model
        self.coefficients = {i: c for i, c in coefficients.items() if c}
        for i in self.coefficients:
            if not 0 <= i < model.rank:
                raise ParseError(f"basis index {i} out of range for {model.name}")

    def _check(self, other: HomologyClass) -> None:
        if other.model is not self.model:
            raise ModelMismatch(f"{self.model.name} vs {other.model.name}")

    def __add__(self, other: HomologyClass) -> HomologyClass:
        self._check(other)
        out = dict(self.coefficients)
        for i, c in other.coefficients.items():
            out[i] = out.get(i, 0) + c
        return HomologyClass(self.model, out)

    def __neg__(self) -> HomologyClass:
        return HomologyClass(self.model, {i: -c for i, c in self.coefficients.items()})

    def __sub__(self, other: HomologyClass) -> HomologyClass:
        return self + (-other)

    def __rmul__(self, k: int) -> HomologyClass:
        return HomologyClass(self.model, {i: k * c for i, c in self.coefficients.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyClass):
            return NotImplemented
        return self.model is other.model and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((id(self.model), frozenset(self.coefficients.items())))

    def is_zero(self) -> bool:
        return not self.coefficients

    def degrees(self) -> set[int]:
        return {self.model.degree(i) for i in self.coefficients}

    def to_list(self) -> list[int]:
        return [self.coefficients.get(i, 0) for i in range(self.model.rank)]

    def __repr__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for i in sorted(self.coefficients):
            c, name = self.coefficients[i], self.model.basis[i].name
            parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
        return " + ".join(parts)


def intersect(M: ManifoldModel, a: HomologyClass, b: HomologyClass) -> int:
    """Bilinear extension of the pairing matrix."""
    if a.model is not M or b.model is not M:
        raise ModelMismatch(f"classes do not belong to {M.name}")
    return sum(
        ca * cb * M.pairing[i][j]
        for i, ca in a.coefficients.items()
        for j, cb in b.coefficients.items()
    )


def dual_basis(M: ManifoldModel) -> list[HomologyClass]:
    """``e*_v`` with ``intersect(e*_v, e_u) == (v == u)``."""
    return [
        HomologyClass(M, {k: c for k, c in enumerate(row) if c})
        for row in M.dual_matrix
    ]


def _integer_inverse(matrix, name: str) -> tuple[tuple[int, ...], ...]:
    """Exact inverse of an integer matrix with determinant ±1."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(int(r == c)) for c in range(n)] for r, row in enumerate(matrix)]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise NonUnimodularPairing(f"pairing of {name} is singular")
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        a[c] = [v / piv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [v - f * w for v, w in zip(a[r], a[c])]
    if det not in (1, -1):
        raise NonUnimodularPairing(f"pairing of {name} has determinant {det}")
    return tuple(tuple(int(v) for v in row[n:]) for row in a)


def rational_to_json(r) -> dict[str, int]:
    r = Fraction(r)
    return {"num": r.numerator, "den": r.denominator}


def rational_from_json(obj) -> Fraction:
    if isinstance(obj, bool) or isinstance(obj, float):
        raise ParseError(f"expected an exact rational, got {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        num, den = obj["num"], obj["den"]
        if not (isinstance(num, int) and isinstance(den, int)) or isinstance(num, bool):
            raise ParseError(f"rational parts must be integers: {obj!r}")
        if den == 0:
            raise ParseError("zero denominator")
        return Fraction(num, den)
    raise ParseError(f"expected {{num, den}}, got {obj!r}")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParseError(msg)


def load_manifold(descriptor: Mapping[str, Any] | str | Path) -> ManifoldModel:
    """Build and eagerly validate a model from a descriptor document.

    ``descriptor`` is either the parsed JSON mapping or a path to the file.
    """
    from .gw import GWTable

    if isinstance(descriptor, (str, Path)):
        try:
            descriptor = json.loads(Path(descriptor).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read descriptor: {exc}") from exc
    d = descriptor
    _require(isinstance(d, Mapping), "descriptor must be a JSON object")
    missing = {"name", "dim", "basis", "pairing", "monotone_lambda", "spherical_classes", "gw"} - set(d)
    _require(not missing, f"descriptor missing fields {sorted(missing)}")

    name = d["name"]
    dim = d["dim"]
    _require(isinstance(name, str) and name != "", "name must be a nonempty string")
    _require(isinstance(dim, int) and dim >= 0 and dim % 2 == 0, f"dim must be even and nonnegative, got {dim!r}")

    basis = []
    for g in d["basis"]:
        _require(isinstance(g, Mapping) and {"name", "degree"} <= set(g), f"bad basis entry {g!r}")
        _require(isinstance(g["degree"], int) and 0 <= g["degree"] <= dim, f"degree out of range in {g!r}")
        basis.append(Generator(str(g["name"]), g["degree"]))
    _require(len(basis) > 0, "empty basis")
    _require(len({g.name for g in basis}) == len(basis), "duplicate generator names")
    _require(
        sum(g.degree == dim for g in basis) == 1,
        "exactly one generator must carry the top degree (the fundamental class)",
    )

    r = len(basis)
    pairing = [[0] * r for _ in range(r)]
    for entry in d["pairing"]:
        _require(isinstance(entry, list) and len(entry) == 3, f"bad pairing entry {entry!r}")
        i, j, v = entry
        _require(all(isinstance(x, int) for x in entry), f"bad pairing entry {entry!r}")
        _require(0 <= i < r and 0 <= j < r, f"pairing index out of range in {entry!r}")
        if v and basis[i].degree + basis[j].degree != dim:
            raise ParseError(f"pairing entry {entry!r} joins degrees that do not sum to {dim}")
        pairing[i][j] = v

    lam_raw = d["monotone_lambda"]
    lam = None if lam_raw == "aspherical" else rational_from_json(lam_raw)
    _require(lam is None or lam > 0, "monotone_lambda must be positive")

    classes = []
    for A in d["spherical_classes"]:
        _require(isinstance(A, Mapping) and {"name", "c1", "omega"} <= set(A), f"bad spherical class {A!r}")
        _require(isinstance(A["c1"], int), f"c1 must be an integer in {A!r}")
        classes.append(SphericalClass(str(A["name"]), A["c1"], rational_from_json(A["omega"])))
    _require(len({A.name for A in classes}) == len(classes), "duplicate spherical class names")
    _require(any(A.is_zero for A in classes), "spherical classes must include the zero class")

    if lam is None:
        extra = [A.name for A in classes if not A.is_zero]
        if extra:
            raise AsphericalViolation(f"{name} is aspherical but lists spherical classes {extra}")
    else:
        for A in classes:
            if A.omega != lam * A.c1:
                raise MonotonicityViolation(
                    f"class {A.name}: omega={A.omega} but lambda*c1={lam * A.c1}"
                )

    pairing_t = tuple(tuple(row) for row in pairing)
    _integer_inverse(pairing_t, name)

    rows = d["gw"]
    _require(isinstance(rows, list), "gw must be an array")
    class_names = {A.name for A in classes}
    for row in rows:
        _require(isinstance(row, Mapping) and {"class", "args", "value"} <= set(row), f"bad gw row {row!r}")
        _require(row["class"] in class_names, f"gw row names unknown class {row['class']!r}")
        args = row["args"]
        _require(
            isinstance(args, list) and len(args) == 3 and all(isinstance(a, int) and 0 <= a < r for a in args),
            f"bad gw args {args!r}",
        )
        _require(isinstance(row["value"], int) and not isinstance(row["value"], bool), f"gw value must be int in {row!r}")

    bound = d.get("complete_through_c1")
    _require(bound is None or (isinstance(bound, int) and bound >= 0), "complete_through_c1 must be a nonnegative integer")

    degrees = tuple(g.degree for g in basis)
    table = GWTable.from_rows(
        [(row["class"], tuple(row["args"]), row["value"]) for row in rows], degrees
    )
    return ManifoldModel(
        name=name,
        dim=dim,
        basis=tuple(basis),
        pairing=pairing_t,
        monotone_lambda=lam,
        spherical_classes=tuple(classes),
        gw=table,
        complete_through_c1=bound,
    )
