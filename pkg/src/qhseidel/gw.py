"""Three-point genus-zero Gromov-Witten invariants as validated table data.

Tables store one representative per symmetry orbit; loading completes each
orbit using the graded symmetry ``GW(a, b, c) = (-1)^{|a||b|} GW(b, a, c)``
(and likewise for every adjacent transposition).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import UnknownClass

if TYPE_CHECKING:
    from .homology import ManifoldModel, SphericalClass

Args = tuple[int, int, int]

__all__ = [
    "GWTable",
    "Violation",
    "TableReport",
    "koszul_sign",
    "gate_passes",
    "gw3",
    "product_gw",
    "product_class_name",
    "validate_table",
]


def koszul_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    """Sign picked up when the graded factors ``degrees`` are reordered to ``order``.

    ``order[p]`` is the old position of the factor that ends up at position ``p``.
    """
    odd = 0
    for p in range(len(order)):
        for r in range(p + 1, len(order)):
            if order[p] > order[r]:
                odd += degrees[order[p]] * degrees[order[r]]
    return -1 if odd % 2 else 1


@dataclass
class GWTable:
    entries: dict[tuple[str, Args], int]
    rows: list[tuple[str, Args, int]]
    conflicts: list[tuple[str, Args, int, int]] = field(default_factory=list)

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[str, Args, int]], degrees: Sequence[int]) -> GWTable:
        entries: dict[tuple[str, Args], int] = {}
        conflicts = []
        rows = [(A, tuple(args), v) for A, args, v in rows]
        for A, args, value in rows:
            degs = [degrees[i] for i in args]
            for order in permutations(range(3)):
                key = (A, tuple(args[p] for p in order))
                val = koszul_sign(degs, order) * value
                old = entries.get(key)
                if old is None:
                    entries[key] = val
                elif old != val:
                    conflicts.append((A, key[1], old, val))
        return cls(entries, rows, conflicts)

    @classmethod
    def from_entries(cls, entries: dict[tuple[str, Args], int]) -> GWTable:
        """Wrap an already orbit-complete table, keeping one row per orbit."""
        seen = set()
        rows = []
        for (A, args), v in sorted(entries.items()):
            orbit = frozenset(permutations(args))
            if (A, orbit) in seen or not v:
                continue
            seen.add((A, orbit))
            rows.append((A, args, v))
        return cls({k: v for k, v in entries.items() if v}, rows)

    def lookup(self, A: str, args: Args) -> int:
        return self.entries.get((A, args), 0)

    def to_rows(self) -> list[dict]:
        return [{"class": A, "args": list(args), "value": v} for A, args, v in self.rows]

    def __len__(self) -> int:
        return len(self.entries)


def _resolve_class(M: ManifoldModel, A) -> SphericalClass:
    name = A if isinstance(A, str) else A.name
    try:
        return M.classes_by_name[name]
    except KeyError:
        raise UnknownClass(f"{name!r} is not a spherical class of {M.name}") from None


def gate_passes(M: ManifoldModel, c1: int, args: Args) -> bool:
    return sum(M.degree(i) for i in args) == 4 * M.n - 2 * c1


def gw3(M: ManifoldModel, A, a: int, b: int, c: int) -> int:
    """``GW^M_{A,3}(e_a, e_b, e_c)``; zero outside the degree gate."""
    cls = _resolve_class(M, A)
    if not gate_passes(M, cls.c1, (a, b, c)):
        return 0
    return M.gw.lookup(cls.name, (a, b, c))


def product_class_name(A1: str, A2: str) -> str:
    return f"({A1},{A2})"


def product_gw(
    M: ManifoldModel,
    N: ManifoldModel,
    A: tuple[str, str],
    a: tuple[int, int],
    b: tuple[int, int],
    c: tuple[int, int],
) -> int:
    """Product-manifold invariant from the factor invariants.

    Arguments are ``(i, j)`` pairs standing for ``e_i ⊗ f_j``; the sign is the
    Koszul sign of regrouping ``a1 a2 b1 b2 c1 c2`` as ``a1 b1 c1 a2 b2 c2``.
    """
    A1, A2 = (x if isinstance(x, str) else x.name for x in A)
    if N.aspherical and A2 != N.zero_class.name:
        return 0
    if M.aspherical and A1 != M.zero_class.name:
        return 0
    _resolve_class(M, A1)
    _resolve_class(N, A2)
    g1 = gw3(M, A1, a[0], b[0], c[0])
    g2 = gw3(N, A2, a[1], b[1], c[1]) if g1 else 0
    if not g2:
        return 0
    da2, db1, db2, dc1 = N.degree(a[1]), M.degree(b[0]), N.degree(b[1]), M.degree(c[0])
    odd = da2 * (db1 + dc1) + db2 * dc1
    return (-1 if odd % 2 else 1) * g1 * g2


@dataclass(frozen=True)
class Violation:
    kind: str
    cls: str
    args: Args
    detail: str


@dataclass
class TableReport:
    model: str
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "ok": self.ok,
            "violations": [
                {"kind": v.kind, "class": v.cls, "args": list(v.args), "detail": v.detail}
                for v in self.violations
            ],
        }


def validate_table(M: ManifoldModel) -> TableReport:
    """Check degree gate, Koszul symmetry, asphericity and the unit axiom."""
    out: list[Violation] = []
    classes = M.classes_by_name
    for (A, args), v in sorted(M.gw.entries.items()):
        if not v:
            continue
        if A not in classes:
            out.append(Violation("UnknownClass", A, args, "entry names a class outside the lattice"))
            continue
        cls = classes[A]
        if M.aspherical and not cls.is_zero:
            out.append(Violation("AsphericalViolation", A, args, "nonzero class on an aspherical model"))
        if not gate_passes(M, cls.c1, args):
            total = sum(M.degree(i) for i in args)
            out.append(
                Violation(
                    "DegreeGateViolation", A, args,
                    f"degree sum {total} != 4n - 2c1 = {4 * M.n - 2 * cls.c1}",
                )
            )
    for A, args, old, new in M.gw.conflicts:
        out.append(
            Violation("KoszulViolation", A, args, f"orbit completion gives both {old} and {new}")
        )
    fund = M.fundamental_index
    for A in M.spherical_classes:
        for x in range(M.rank):
            for y in range(M.rank):
                got = gw3(M, A.name, fund, x, y)
                want = M.pairing[x][y] if A.is_zero else 0
                if got != want:
                    out.append(
                        Violation(
                            "FundamentalClassViolation", A.name, (fund, x, y),
                            f"GW([M], e_{x}, e_{y}) = {got}, expected {want}",
                        )
                    )
    return TableReport(M.name, out)
