"""Seidel elements of Hamiltonian circle actions and the product theorems.

A circle action enters through its McDuff-Tolman data: the maximal fixed
component, its codimension, the maximum ``K0`` of the normalized moment map
and the caller-supplied higher-order terms.  The element is

    [M_max] ⊗ q^{codim/2} t^{-K0}  +  Σ α ⊗ q^{-c} t^{-ω̃}.

Sign convention: ``K0`` is taken literally, so the rotation of S^2 with
``ω(line) = 1`` needs ``K0 = -1/2`` for its element to square to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import (
    ActionDataError,
    AsphericalRequired,
    DegreeContractViolation,
    ModelMismatch,
    NotAUnit,
    ParseError,
)
from .homology import HomologyClass, ManifoldModel, rational_from_json, rational_to_json
from .kunneth import kappa, kappa_prime, kappa_zero, product_index, product_manifold
from .novikov import NovikovScalar
from .qring import QuantumElement, identity_element, qmul, try_inverse

__all__ = [
    "Correction",
    "CircleActionData",
    "SeidelElement",
    "constant_loop",
    "action_from_descriptor",
    "seidel_circle",
    "lift_trivial_factor",
    "diagonal_leading_term",
    "leading_part",
    "term_diff",
    "VerificationReport",
    "verify_thm1",
    "verify_thm2",
    "thm2_identity",
    "is_nontrivial",
    "check_homomorphism",
]


@dataclass(frozen=True)
class Correction:
    alpha: HomologyClass
    c: int
    omega_tilde: Fraction


@dataclass(frozen=True)
class CircleActionData:
    model: ManifoldModel
    max_class: HomologyClass
    codim: int
    K0: Fraction
    corrections: tuple[Correction, ...] = ()
    name: str = ""

    def __post_init__(self):
        M = self.model
        object.__setattr__(self, "K0", Fraction(self.K0))
        object.__setattr__(self, "corrections", tuple(self.corrections))
        if not isinstance(self.codim, int) or self.codim < 0 or self.codim % 2:
            raise ActionDataError(f"codim must be even and nonnegative, got {self.codim!r}")
        if self.max_class.model is not M:
            raise ModelMismatch("max_class does not belong to the action's model")
        if self.max_class.is_zero():
            raise ActionDataError("max_class must be nonzero")
        if self.max_class.degrees() != {M.dim - self.codim}:
            raise DegreeContractViolation(
                f"max_class has degrees {sorted(self.max_class.degrees())}, "
                f"expected dim - codim = {M.dim - self.codim}"
            )
        for corr in self.corrections:
            if corr.alpha.model is not M:
                raise ModelMismatch("correction class does not belong to the action's model")
            if not Fraction(corr.omega_tilde) > self.K0:
                raise ActionDataError(
                    f"correction with omega_tilde={corr.omega_tilde} does not exceed K0={self.K0}"
                )
            if corr.alpha.is_zero():
                continue
            degs = {d - 2 * corr.c for d in corr.alpha.degrees()}
            if degs != {M.dim}:
                raise DegreeContractViolation(
                    f"correction term has degrees {sorted(degs)}, expected {M.dim}"
                )

    def to_descriptor(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "manifold": self.model.name,
            "max_class": self.max_class.to_list(),
            "codim": self.codim,
            "K0": rational_to_json(self.K0),
            "corrections": [
                {
                    "alpha": corr.alpha.to_list(),
                    "c": corr.c,
                    "omega_tilde": rational_to_json(corr.omega_tilde),
                }
                for corr in self.corrections
            ],
        }


def _class_from_list(M: ManifoldModel, coeffs) -> HomologyClass:
    if not isinstance(coeffs, list) or len(coeffs) != M.rank or not all(
        isinstance(c, int) and not isinstance(c, bool) for c in coeffs
    ):
        raise ParseError(f"expected {M.rank} integer coefficients for {M.name}, got {coeffs!r}")
    return HomologyClass(M, dict(enumerate(coeffs)))


def action_from_descriptor(
    doc: Mapping[str, Any], resolve: Callable[[str], ManifoldModel] | None = None
) -> CircleActionData:
    """Build action data from its JSON document; ``resolve`` maps manifold names."""
    if resolve is None:
        from .catalog import get_manifold as resolve
    missing = {"manifold", "max_class", "codim", "K0"} - set(doc)
    if missing:
        raise ParseError(f"action descriptor missing fields {sorted(missing)}")
    M = resolve(doc["manifold"])
    corrections = []
    for corr in doc.get("corrections", []):
        if not isinstance(corr, Mapping) or {"alpha", "c", "omega_tilde"} - set(corr):
            raise ParseError(f"bad correction entry {corr!r}")
        if not isinstance(corr["c"], int):
            raise ParseError(f"correction c must be an integer: {corr!r}")
        corrections.append(
            Correction(
                _class_from_list(M, corr["alpha"]),
                corr["c"],
                rational_from_json(corr["omega_tilde"]),
            )
        )
    if not isinstance(doc["codim"], int):
        raise ParseError("codim must be an integer")
    return CircleActionData(
        model=M,
        max_class=_class_from_list(M, doc["max_class"]),
        codim=doc["codim"],
        K0=rational_from_json(doc["K0"]),
        corrections=tuple(corrections),
        name=str(doc.get("name", "")),
    )


def constant_loop(M: ManifoldModel) -> CircleActionData:
    return CircleActionData(M, M.generator(M.fundamental_index), 0, Fraction(0), (), "constant")


@dataclass(frozen=True)
class SeidelElement:
    """A homogeneous degree-2n unit; both facts are checked on construction."""

    element: QuantumElement
    inverse: QuantumElement = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        x = self.element
        M = x.model
        if x.is_zero() or not x.is_homogeneous() or x.degree() != M.dim:
            degs = sorted(x.term_degrees())
            raise DegreeContractViolation(f"Seidel element {x} has degrees {degs}, expected {M.dim}")
        try:
            inv = try_inverse(x)
        except NotAUnit as exc:
            raise NotAUnit(f"{x} is not a unit: {exc}") from exc
        if qmul(x, inv) != identity_element(M) or qmul(inv, x) != identity_element(M):
            raise NotAUnit(f"inverse of {x} failed the round trip")
        object.__setattr__(self, "inverse", inv)

    @property
    def model(self) -> ManifoldModel:
        return self.element.model

    def __str__(self) -> str:
        return str(self.element)


def seidel_circle(action: CircleActionData) -> SeidelElement:
    M = action.model
    lead = QuantumElement.from_class(
        action.max_class, NovikovScalar.monomial(1, action.codim // 2, -action.K0)
    )
    for corr in action.corrections:
        lead = lead + QuantumElement.from_class(
            corr.alpha, NovikovScalar.monomial(1, -corr.c, -corr.omega_tilde)
        )
    return SeidelElement(lead)


def _tensor_class(a: HomologyClass, b: HomologyClass) -> HomologyClass:
    M, N = a.model, b.model
    P = product_manifold(M, N)
    out = {}
    for i, ca in a.coefficients.items():
        for j, cb in b.coefficients.items():
            k = product_index(M, N, i, j)
            out[k] = out.get(k, 0) + ca * cb
    return HomologyClass(P, out)


def lift_trivial_factor(action: CircleActionData, N: ManifoldModel) -> CircleActionData:
    """The action ``ψ x id_N`` on ``M x N`` for aspherical ``N``."""
    if not N.aspherical:
        raise AsphericalRequired(f"{N.name} has spherical classes; the lift needs pi_2(N) = 0")
    fund = N.generator(N.fundamental_index)
    return CircleActionData(
        model=product_manifold(action.model, N),
        max_class=_tensor_class(action.max_class, fund),
        codim=action.codim,
        K0=action.K0,
        corrections=tuple(
            Correction(_tensor_class(corr.alpha, fund), corr.c, corr.omega_tilde)
            for corr in action.corrections
        ),
        name=f"{action.name}x id" if action.name else "",
    )


def diagonal_leading_term(action: CircleActionData) -> QuantumElement:
    """``[M_max x M_max] ⊗ q^{codim} t^{-2 K0}`` in ``QH(M x M)``."""
    return QuantumElement.from_class(
        _tensor_class(action.max_class, action.max_class),
        NovikovScalar.monomial(1, action.codim, -2 * action.K0),
    )


def leading_part(x: QuantumElement) -> QuantumElement:
    """Monomials carrying the largest t-exponent."""
    if x.is_zero():
        return x
    top = max(t for _, _, _, t in x.monomials())
    out: dict[int, NovikovScalar] = {}
    for i, c, k, t in x.monomials():
        if t == top:
            out[i] = out.get(i, NovikovScalar()) + NovikovScalar.monomial(c, k, t)
    return QuantumElement(x.model, out)


def term_diff(lhs: QuantumElement, rhs: QuantumElement) -> list[dict[str, Any]]:
    """Monomials on which two elements of one model disagree."""
    def coeffs(x):
        return {(i, k, t): c for i, c, k, t in x.monomials()}

    a, b = coeffs(lhs), coeffs(rhs)
    names = lhs.model.basis
    out = []
    for key in sorted(set(a) | set(b)):
        if a.get(key, 0) != b.get(key, 0):
            i, k, t = key
            out.append(
                {
                    "generator": names[i].name,
                    "q": k,
                    "t": str(t),
                    "lhs": a.get(key, 0),
                    "rhs": b.get(key, 0),
                }
            )
    return out


@dataclass
class VerificationReport:
    name: str
    equal: bool
    lhs: str
    rhs: str
    checks: dict[str, bool] = field(default_factory=dict)
    diff: list[dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.name,
            "equal": self.equal,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "checks": self.checks,
            "diff": self.diff,
        }

    def __bool__(self) -> bool:
        return self.equal


def verify_thm1(action: CircleActionData, N: ManifoldModel) -> VerificationReport:
    """Compare S(ψ x id_N) with κ(S(ψ)), each computed on its own path."""
    lifted = seidel_circle(lift_trivial_factor(action, N)).element
    pushed = kappa(seidel_circle(action).element, N)
    diff = term_diff(lifted, pushed)
    return VerificationReport("thm1", not diff, str(lifted), str(pushed), {"S(tau(psi)) == kappa(S(psi))": not diff}, diff)


def thm2_identity(
    x: QuantumElement, kappa_zero_fn: Callable[[QuantumElement], QuantumElement] = kappa_zero
) -> VerificationReport:
    """Check ``κ'(x) == κ(x) * κ0(x)`` for one element."""
    lhs = kappa_prime(x)
    rhs = qmul(kappa(x, x.model), kappa_zero_fn(x))
    diff = term_diff(lhs, rhs)
    return VerificationReport("kappa' = kappa * kappa0", not diff, str(lhs), str(rhs), {}, diff)


def verify_thm2(action: CircleActionData) -> VerificationReport:
    """Check ``κ'(S) = κ(S) * κ0(S)`` and the doubled leading term."""
    M = action.model
    if not M.aspherical:
        raise AsphericalRequired(f"{M.name} has spherical classes; the diagonal theorem needs pi_2(M) = 0")
    S = seidel_circle(action).element
    core = thm2_identity(S)
    diagonal = kappa_prime(S)
    lead_ok = leading_part(diagonal) == diagonal_leading_term(action)
    checks = {
        "kappa'(S) == kappa(S) * kappa0(S)": core.equal,
        "leading term == [Mmax x Mmax] q^codim t^-2K0": lead_ok,
    }
    diff = list(core.diff)
    if not lead_ok:
        diff += term_diff(leading_part(diagonal), diagonal_leading_term(action))
    return VerificationReport("thm2", all(checks.values()), core.lhs, core.rhs, checks, diff)


def is_nontrivial(S: SeidelElement) -> bool:
    return S.element != identity_element(S.model)


@dataclass
class HomomorphismReport:
    results: list[dict[str, Any]]

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.results)

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "results": self.results}


def _elem(x) -> QuantumElement:
    return x.element if isinstance(x, SeidelElement) else x


def check_homomorphism(triples: Iterable[Sequence]) -> HomomorphismReport:
    """For each ``(S1, S2, S12)`` check ``S1 * S2 == S12``."""
    triples = [tuple(_elem(x) for x in t) for t in triples]
    models = {id(x.model) for t in triples for x in t}
    if len(models) > 1:
        raise ModelMismatch("all elements must live over one model")
    results = []
    for n, (a, b, ab) in enumerate(triples):
        prod = qmul(a, b)
        diff = term_diff(prod, ab)
        results.append({"index": n, "ok": not diff, "product": str(prod), "claimed": str(ab), "diff": diff})
    return HomomorphismReport(results)
