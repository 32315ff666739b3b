import dataclasses
import itertools

import pytest

from qhseidel.catalog import get_manifold
from qhseidel.errors import UnknownClass
from qhseidel.gw import GWTable, gate_passes, gw3, koszul_sign, product_gw, validate_table
from qhseidel.homology import intersect


def test_gw3_examples(s2, sigma1):
    assert gw3(s2, "line", 0, 0, 0) == 1
    assert gw3(s2, "0", 0, 0, 0) == 0  # gate: 0 != 4
    a, b, T = (sigma1.index_of(n) for n in ("a", "b", "[T2]"))
    expected = intersect(sigma1, sigma1.generator(a), sigma1.generator(b))
    assert expected == 1
    assert gw3(sigma1, "0", a, b, T) == expected
    with pytest.raises(UnknownClass):
        gw3(s2, "conic", 0, 0, 0)


def test_cp2_line_orbit(cp2):
    pt, L = 0, cp2.index_of("[L]")
    for args in set(itertools.permutations((pt, pt, L))):
        assert gw3(cp2, "line", *args) == 1


def test_gate_zero_exhaustive(model):
    for A in model.spherical_classes:
        for args in itertools.product(range(model.rank), repeat=3):
            if not gate_passes(model, A.c1, args):
                assert gw3(model, A, *args) == 0


def test_koszul_symmetry_of_tables(model):
    for A in model.spherical_classes:
        for args in itertools.product(range(model.rank), repeat=3):
            degs = [model.degree(i) for i in args]
            base = gw3(model, A, *args)
            for order in itertools.permutations(range(3)):
                permuted = tuple(args[p] for p in order)
                assert gw3(model, A, *permuted) == koszul_sign(degs, order) * base


def test_koszul_sign():
    assert koszul_sign([1, 1, 2], (1, 0, 2)) == -1
    assert koszul_sign([1, 2, 1], (2, 1, 0)) == -1
    assert koszul_sign([2, 2, 0], (2, 0, 1)) == 1


def test_product_gw_example(s2, sigma1):
    pt, fund = 0, sigma1.fundamental_index
    got = product_gw(s2, sigma1, ("line", "0"), (0, fund), (0, fund), (0, pt))
    assert got == gw3(s2, "line", 0, 0, 0) * gw3(sigma1, "0", fund, fund, pt) == 1


def test_product_gw_aspherical_second_factor(s2, sigma1):
    fund = sigma1.fundamental_index
    assert product_gw(s2, sigma1, ("line", "line"), (0, fund), (0, fund), (0, 0)) == 0
    with pytest.raises(UnknownClass):
        product_gw(s2, sigma1, ("conic", "0"), (0, fund), (0, fund), (0, 0))


def test_product_gw_classical_even(s2, cp2):
    s = get_manifold("s2")
    for a, b, c in itertools.product(range(s.rank), repeat=3):
        for a2, b2, c2 in itertools.product(range(s.rank), repeat=3):
            expect = gw3(s, "0", a, b, c) * gw3(s, "0", a2, b2, c2)
            assert product_gw(s, s, ("0", "0"), (a, a2), (b, b2), (c, c2)) == expect


def test_shipped_tables_validate(model):
    assert validate_table(model).ok


def test_validate_flags_gate_violation(s2):
    bad = GWTable.from_rows(list(s2.gw.rows) + [("line", (1, 1, 1), 5)], [g.degree for g in s2.basis])
    report = validate_table(dataclasses.replace(s2, gw=bad))
    assert not report.ok
    assert {v.kind for v in report.violations} == {"DegreeGateViolation"}


def test_validate_flags_aspherical_entry(sigma1):
    fake_classes = sigma1.spherical_classes + (dataclasses.replace(sigma1.zero_class, name="A", c1=1),)
    rows = list(sigma1.gw.rows) + [("A", (0, 0, 3), 1)]
    M = dataclasses.replace(
        sigma1,
        spherical_classes=fake_classes,
        gw=GWTable.from_rows(rows, [g.degree for g in sigma1.basis]),
    )
    kinds = {v.kind for v in validate_table(M).violations}
    assert "AsphericalViolation" in kinds


def test_validate_flags_koszul_conflict(sigma1):
    a, b, T = (sigma1.index_of(n) for n in ("a", "b", "[T2]"))
    rows = list(sigma1.gw.rows) + [("0", (b, a, T), 1)]  # should be -1
    M = dataclasses.replace(sigma1, gw=GWTable.from_rows(rows, [g.degree for g in sigma1.basis]))
    assert "KoszulViolation" in {v.kind for v in validate_table(M).violations}
