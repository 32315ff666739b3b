from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qhseidel import seidel as seidel_mod
from qhseidel.catalog import get_manifold
from qhseidel.novikov import NovikovScalar
from qhseidel.qring import QuantumElement

CATALOG = ["point", "s2", "cp2", "sigma1", "sigma2"]
ASPHERICAL = ["point", "sigma1", "sigma2"]

T_EXPONENTS = [Fraction(n, d) for n in range(-4, 5) for d in (1, 2, 3)]

# every SeidelElement built while the suite runs, for the unit-contract check
CONSTRUCTED_SEIDEL: list = []


@pytest.fixture(scope="session", autouse=True)
def _record_seidel_elements():
    original = seidel_mod.SeidelElement.__post_init__

    def recording(self):
        original(self)
        CONSTRUCTED_SEIDEL.append(self)

    seidel_mod.SeidelElement.__post_init__ = recording
    yield
    seidel_mod.SeidelElement.__post_init__ = original


@pytest.fixture(params=CATALOG)
def model(request):
    return get_manifold(request.param)


@pytest.fixture
def s2():
    return get_manifold("s2")


@pytest.fixture
def cp2():
    return get_manifold("cp2")


@pytest.fixture
def sigma1():
    return get_manifold("sigma1")


@pytest.fixture
def sigma2():
    return get_manifold("sigma2")


def random_scalar(rng: random.Random, q: int | None = None, terms: int = 3) -> NovikovScalar:
    out = NovikovScalar()
    for _ in range(rng.randint(1, terms)):
        k = q if q is not None else rng.randint(-3, 3)
        out = out + NovikovScalar.monomial(rng.choice([-3, -2, -1, 1, 2, 3]), k, rng.choice(T_EXPONENTS))
    return out


def random_element(rng: random.Random, M, degree: int | None = None, terms: int = 2) -> QuantumElement:
    """Random element; homogeneous of ``degree`` when one is given."""
    out = {}
    for i in range(M.rank):
        if rng.random() < 0.4:
            continue
        if degree is None:
            out[i] = random_scalar(rng, terms=terms)
        elif (degree - M.degree(i)) % 2 == 0:
            out[i] = random_scalar(rng, q=(degree - M.degree(i)) // 2, terms=terms)
    return QuantumElement(M, out)


def random_homogeneous(rng: random.Random, M, parity: int | None = None) -> QuantumElement:
    """Nonzero homogeneous element, optionally of a fixed degree parity."""
    while True:
        degree = rng.randint(-4, M.dim + 4)
        if parity is not None and degree % 2 != parity:
            continue
        x = random_element(rng, M, degree)
        if x:
            return x


@st.composite
def scalars(draw, max_terms: int = 3):
    n = draw(st.integers(0, max_terms))
    out = NovikovScalar()
    for _ in range(n):
        out = out + NovikovScalar.monomial(
            draw(st.integers(-5, 5)),
            draw(st.integers(-3, 3)),
            draw(st.sampled_from(T_EXPONENTS)),
        )
    return out


@st.composite
def elements(draw, M, max_terms: int = 2):
    terms = {}
    for i in range(M.rank):
        if draw(st.booleans()):
            terms[i] = draw(scalars(max_terms))
    return QuantumElement(M, terms)


@st.composite
def homogeneous_elements(draw, M, parity: int | None = None):
    degrees = [d for d in range(-4, M.dim + 5) if parity is None or d % 2 == parity]
    degree = draw(st.sampled_from(degrees))
    terms = {}
    for i in range(M.rank):
        if (degree - M.degree(i)) % 2 == 0 and draw(st.booleans()):
            q = (degree - M.degree(i)) // 2
            s = NovikovScalar()
            for _ in range(draw(st.integers(1, 2))):
                s = s + NovikovScalar.monomial(
                    draw(st.sampled_from([-2, -1, 1, 2])), q, draw(st.sampled_from(T_EXPONENTS))
                )
            terms[i] = s
    return QuantumElement(M, terms)


# one line per acceptance criterion, echoed again in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_collection_modifyitems(items):
    # acceptance runs last so the unit-contract check sees every SeidelElement
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
