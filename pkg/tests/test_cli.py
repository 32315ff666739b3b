import io
import json
import shutil
from importlib import resources

import jsonschema
import pytest

from qhseidel.catalog import get_manifold
from qhseidel.cli import run
from qhseidel.homology import load_manifold
from qhseidel.qring import parse_element

SCHEMA = json.loads((resources.files("qhseidel") / "schema" / "output.schema.json").read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def bad_s2(tmp_path):
    doc = get_manifold("s2").to_descriptor()
    doc["gw"].append({"class": "line", "args": [1, 1, 1], "value": 3})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    return path


def test_table_example():
    code, out, _ = call("table", "--manifold", "s2")
    assert code == 0
    assert "pt * pt = [S2]*q^-2*t^-1" in out
    assert len(out.strip().splitlines()) == 4


def test_qmul_example():
    code, out, _ = call("qmul", "--manifold", "cp2", "--lhs", "[L]", "--rhs", "[L]")
    assert (code, out.strip()) == (0, "pt")


def test_verify_thm1_example():
    code, out, _ = call("verify-thm1", "--action", "s2-rotation.json", "--with", "sigma1")
    assert code == 0 and "equal" in out


def test_seidel_reports_order():
    code, out, _ = call("seidel", "--action", "cp2-point-rotation")
    assert code == 0
    assert "order = 3" in out and "S = pt*q^2*t^2/3" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "--manifold", "s2"),
        ("table", "--manifold", "s2", "--with", "sigma1"),
        ("qmul", "--manifold", "cp2", "--lhs", "[L]", "--rhs", "pt"),
        ("inverse", "--manifold", "cp2", "--element", "[L]"),
        ("order", "--manifold", "s2", "--element", "pt*q*t^1/2"),
        ("order", "--manifold", "cp2", "--element", "[L]", "--bound", "10"),
        ("product", "--manifold", "s2", "--with", "sigma1"),
        ("kappa", "--manifold", "s2", "--element", "pt*q*t^1/2", "--with", "sigma2"),
        ("kappa", "--manifold", "s2", "--element", "pt", "--map", "kappa0"),
        ("kappa", "--manifold", "s2", "--element", "pt", "--map", "kappa-prime"),
        ("seidel", "--action", "s2-rotation"),
        ("verify-thm1", "--action", "cp2-line-rotation", "--with", "sigma2"),
        ("validate", "--manifold", "cp2"),
    ],
)
def test_json_output_matches_schema(argv):
    code, doc = call_json(*argv)
    assert code == 0 and doc["ok"] and doc["command"] == argv[0]


def test_verify_thm2_json(tmp_path):
    action = {"name": "still", "manifold": "sigma1", "max_class": [0, 0, 0, 1], "codim": 0, "K0": 0, "corrections": []}
    path = tmp_path / "still.json"
    path.write_text(json.dumps(action))
    code, doc = call_json("verify-thm2", "--action", str(path))
    assert code == 0 and doc["result"]["equal"]


def test_validation_failure_is_exit_1(tmp_path):
    path = bad_s2(tmp_path)
    code, doc = call_json("validate", "--manifold-file", str(path))
    assert code == 1 and not doc["ok"]
    assert "DegreeGateViolation" in {v["kind"] for v in doc["result"]["violations"]}
    code, out, _ = call("validate", "--manifold-file", str(path))
    assert code == 1 and "DegreeGateViolation" in out


@pytest.mark.parametrize(
    "argv, kind",
    [
        (("product", "--manifold", "s2", "--with", "cp2"), "MonotonicityMismatch"),
        (("verify-thm2", "--action", "s2-rotation"), "AsphericalRequired"),
        (("qmul", "--manifold", "s2", "--lhs", "nope", "--rhs", "pt"), "ParseError"),
        (("inverse", "--manifold", "sigma1", "--element", "pt"), "NotAUnit"),
        (("table", "--manifold", "nowhere"), "ParseError"),
        (("table",), "UsageError"),
        (("verify-thm1", "--action", "s2-rotation", "--with", "s2"), "AsphericalRequired"),
    ],
)
def test_input_errors_are_exit_2(argv, kind):
    code, out, err = call(*argv)
    assert code == 2 and f"error: {kind}" in err
    code, doc = call_json(*argv)
    assert code == 2 and doc["error"]["kind"] == kind


def test_argparse_errors_are_exit_2():
    assert call("frobnicate")[0] == 2
    assert call("qmul", "--manifold", "s2")[0] == 2
    assert call()[0] == 2


def test_text_round_trip():
    code, out, _ = call("inverse", "--manifold", "cp2", "--element", "[L]")
    cp2 = get_manifold("cp2")
    inv = parse_element(cp2, out.strip())
    code, out, _ = call("qmul", "--manifold", "cp2", "--lhs", "[L]", "--rhs", str(inv))
    assert out.strip() == "[CP2]"


def test_product_export_round_trip(tmp_path):
    path = tmp_path / "p.json"
    assert call("product", "--manifold", "s2", "--with", "sigma1", "--out", str(path))[0] == 0
    P = load_manifold(path)
    assert P.rank == 8
    code, out, _ = call("qmul", "--manifold-file", str(path), "--lhs", "pt⊗pt", "--rhs", "pt⊗[T2]")
    assert out.strip() == "[S2]⊗pt*q^-2*t^-1"
    assert call("validate", "--manifold-file", str(path))[0] == 0


def test_catalog_env_extension(tmp_path, monkeypatch):
    src = resources.files("qhseidel") / "catalog" / "s2.json"
    doc = json.loads(src.read_text())
    doc["name"] = "sphere"
    (tmp_path / "sphere.json").write_text(json.dumps(doc))
    (tmp_path / "actions").mkdir()
    action = json.loads((resources.files("qhseidel") / "catalog" / "actions" / "s2-rotation.json").read_text())
    action.update(name="spin", manifold="sphere")
    (tmp_path / "actions" / "spin.json").write_text(json.dumps(action))
    monkeypatch.setenv("QH_CATALOG_DIR", str(tmp_path))
    code, out, _ = call("table", "--manifold", "sphere")
    assert code == 0 and "pt * pt = [S2]*q^-2*t^-1" in out
    code, out, _ = call("seidel", "--action", "spin")
    assert code == 0 and "order = 2" in out


def test_exit_codes_are_exhaustive(tmp_path):
    shutil.copy(bad_s2(tmp_path), tmp_path / "copy.json")
    for argv in [("validate", "--manifold-file", str(tmp_path / "copy.json")), ("table", "--manifold", "point"), ("seidel",)]:
        assert call(*argv)[0] in (0, 1, 2)
