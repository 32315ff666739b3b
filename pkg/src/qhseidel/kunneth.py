"""Product manifolds and the maps into their quantum homology.

For ``M x N`` the basis is ``e_i ⊗ f_j`` in row-major order, the pairing is
``(a1⊗a2)·(b1⊗b2) = (-1)^{|a2||b1|} (a1·b1)(a2·b2)`` and the GW table is
generated factor-wise by :func:`qhseidel.gw.product_gw`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import MonotonicityMismatch, QHError
from .gw import GWTable, product_class_name, product_gw, validate_table
from .homology import Generator, ManifoldModel, SphericalClass
from .novikov import ZERO
from .qring import QuantumElement

__all__ = [
    "ProductModel",
    "product_manifold",
    "product_index",
    "tensor",
    "kappa",
    "kappa_prime",
    "kappa_zero",
    "kappa_zero_printed",
]


@dataclass(frozen=True, eq=False, repr=False)
class ProductModel(ManifoldModel):
    left: ManifoldModel | None = None
    right: ManifoldModel | None = None


def product_index(M: ManifoldModel, N: ManifoldModel, i: int, j: int) -> int:
    return i * N.rank + j


def _product_lambda(M: ManifoldModel, N: ManifoldModel):
    if M.aspherical:
        return N.monotone_lambda
    if N.aspherical or M.monotone_lambda == N.monotone_lambda:
        return M.monotone_lambda
    raise MonotonicityMismatch(
        f"{M.name} has lambda={M.monotone_lambda}, {N.name} has lambda={N.monotone_lambda}"
    )


def _product_chern_bound(M: ManifoldModel, N: ManifoldModel) -> int:
    # a product class contributes only if both factor gates pass
    if M.chern_bound >= M.dim and N.chern_bound >= N.dim:
        return M.dim + N.dim
    return min(M.chern_bound, N.chern_bound)


@lru_cache(maxsize=None)
def product_manifold(M: ManifoldModel, N: ManifoldModel) -> ProductModel:
    """``M x N`` with its Künneth quantum structure. Cached per factor pair."""
    lam = _product_lambda(M, N)
    basis = tuple(
        Generator(f"{e.name}⊗{f.name}", e.degree + f.degree) for e in M.basis for f in N.basis
    )
    r = len(basis)
    pairing = [[0] * r for _ in range(r)]
    for i1 in range(M.rank):
        for j1 in range(M.rank):
            p1 = M.pairing[i1][j1]
            if not p1:
                continue
            for i2 in range(N.rank):
                for j2 in range(N.rank):
                    p2 = N.pairing[i2][j2]
                    if not p2:
                        continue
                    sign = -1 if (N.degree(i2) * M.degree(j1)) % 2 else 1
                    pairing[product_index(M, N, i1, i2)][product_index(M, N, j1, j2)] = sign * p1 * p2
    classes = tuple(
        SphericalClass(product_class_name(A1.name, A2.name), A1.c1 + A2.c1, A1.omega + A2.omega)
        for A1 in M.spherical_classes
        for A2 in N.spherical_classes
    )

    entries: dict = {}
    for (A1, (a1, b1, c1)), v1 in M.gw.entries.items():
        if not v1:
            continue
        for (A2, (a2, b2, c2)), v2 in N.gw.entries.items():
            if not v2:
                continue
            value = product_gw(M, N, (A1, A2), (a1, a2), (b1, b2), (c1, c2))
            if value:
                key = (
                    product_class_name(A1, A2),
                    (
                        product_index(M, N, a1, a2),
                        product_index(M, N, b1, b2),
                        product_index(M, N, c1, c2),
                    ),
                )
                entries[key] = value

    P = ProductModel(
        name=f"{M.name}x{N.name}",
        dim=M.dim + N.dim,
        basis=basis,
        pairing=tuple(tuple(row) for row in pairing),
        monotone_lambda=lam,
        spherical_classes=classes,
        gw=GWTable.from_entries(entries),
        complete_through_c1=_product_chern_bound(M, N),
        left=M,
        right=N,
    )
    report = validate_table(P)
    if not report.ok:
        raise QHError(f"generated table for {P.name} failed validation: {report.violations[:3]}")
    return P


def tensor(x: QuantumElement, y: QuantumElement) -> QuantumElement:
    """Künneth tensor ``x ⊗_Λ y`` in ``QH(M x N)``."""
    M, N = x.model, y.model
    P = product_manifold(M, N)
    out = {}
    for i, s in x.terms.items():
        for j, r in y.terms.items():
            k = product_index(M, N, i, j)
            out[k] = out.get(k, ZERO) + s * r
    return QuantumElement(P, out)


def kappa(x: QuantumElement, N: ManifoldModel) -> QuantumElement:
    """``α ⊗ λ  ↦  (α ⊗ [N]) ⊗ λ``."""
    M = x.model
    P = product_manifold(M, N)
    f = N.fundamental_index
    return QuantumElement(P, {product_index(M, N, i, f): s for i, s in x.terms.items()})


def kappa_zero(x: QuantumElement) -> QuantumElement:
    """``α ⊗ λ  ↦  ([M] ⊗ α) ⊗ λ`` in ``QH(M x M)``."""
    M = x.model
    P = product_manifold(M, M)
    f = M.fundamental_index
    return QuantumElement(P, {product_index(M, M, f, i): s for i, s in x.terms.items()})


def kappa_zero_printed(x: QuantumElement) -> QuantumElement:
    """``α ↦ α ⊗ [M]``: the other factor order, kept to show it is observable."""
    M = x.model
    P = product_manifold(M, M)
    f = M.fundamental_index
    return QuantumElement(P, {product_index(M, M, i, f): s for i, s in x.terms.items()})


def kappa_prime(x: QuantumElement) -> QuantumElement:
    """Tensor square ``x ⊗ x``; multiplicative, not additive."""
    return tensor(x, x)
