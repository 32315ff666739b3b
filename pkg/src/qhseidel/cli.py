"""``qhseidel`` command line.

Exit status: 0 success, 1 a verification found an inequality or a table
violation, 2 bad input (the diagnostic names the violated invariant).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import catalog
from .errors import QHError
from .gw import validate_table
from .homology import ManifoldModel, load_manifold
from .kunneth import kappa, kappa_prime, kappa_zero, product_manifold
from .qring import DEFAULT_ORDER_BOUND, QuantumElement, multiplication_table, parse_element, qmul, try_inverse, unit_order
from .seidel import action_from_descriptor, is_nontrivial, seidel_circle, verify_thm1, verify_thm2

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class _Usage(Exception):
    pass


def element_json(x: QuantumElement) -> dict[str, Any]:
    return {
        "manifold": x.model.name,
        "text": str(x),
        "terms": [
            {"generator": x.model.basis[i].name, "coef": c, "q": k, "t": str(t)}
            for i, c, k, t in x.monomials()
        ],
    }


def _resolve(name_or_path: str) -> ManifoldModel:
    p = Path(name_or_path)
    if p.suffix == ".json" and p.is_file():
        return load_manifold(p)
    return catalog.get_manifold(name_or_path)


def _manifold(args) -> ManifoldModel:
    if getattr(args, "manifold_file", None):
        return load_manifold(Path(args.manifold_file))
    if not getattr(args, "manifold", None):
        raise _Usage("--manifold or --manifold-file is required")
    return _resolve(args.manifold)


def _action(args):
    doc = catalog.read_action_descriptor(args.action)
    override = _manifold(args) if getattr(args, "manifold_file", None) else None
    return action_from_descriptor(doc, (lambda _name: override) if override else _resolve)


def cmd_table(args):
    M = _manifold(args)
    if args.with_:
        M = product_manifold(M, _resolve(args.with_))
    rows = multiplication_table(M)
    names = [g.name for g in M.basis]
    lines = [f"{names[i]} * {names[j]} = {e}" for i, j, e in rows]
    payload = {
        "manifold": M.name,
        "entries": [{"lhs": names[i], "rhs": names[j], "product": element_json(e)} for i, j, e in rows],
    }
    return True, "\n".join(lines), payload


def cmd_qmul(args):
    M = _manifold(args)
    x, y = parse_element(M, args.lhs), parse_element(M, args.rhs)
    z = qmul(x, y)
    return True, str(z), {"lhs": element_json(x), "rhs": element_json(y), "product": element_json(z)}


def cmd_inverse(args):
    M = _manifold(args)
    x = parse_element(M, args.element)
    y = try_inverse(x)
    return True, str(y), {"element": element_json(x), "inverse": element_json(y)}


def cmd_order(args):
    M = _manifold(args)
    x = parse_element(M, args.element)
    k = unit_order(x, args.bound)
    text = str(k) if k is not None else f"exceeds bound {args.bound}"
    return True, text, {"element": element_json(x), "bound": args.bound, "order": k}


def cmd_product(args):
    M, N = _manifold(args), _resolve(args.with_)
    P = product_manifold(M, N)
    desc = P.to_descriptor()
    if args.out:
        Path(args.out).write_text(json.dumps(desc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    text = json.dumps(desc, indent=1, ensure_ascii=False)
    return True, text, {"manifold": P.name, "dim": P.dim, "rank": P.rank, "descriptor": desc}


_MAPS: dict[str, Callable] = {
    "kappa": None,
    "kappa0": kappa_zero,
    "kappa-prime": kappa_prime,
}


def cmd_kappa(args):
    M = _manifold(args)
    x = parse_element(M, args.element)
    if args.map == "kappa":
        if not args.with_:
            raise _Usage("kappa needs --with")
        y = kappa(x, _resolve(args.with_))
    else:
        y = _MAPS[args.map](x)
    return True, str(y), {"map": args.map, "element": element_json(x), "image": element_json(y)}


def cmd_seidel(args):
    action = _action(args)
    S = seidel_circle(action)
    k = unit_order(S.element, args.bound)
    order = str(k) if k is not None else f"> {args.bound}"
    text = "\n".join(
        [
            f"S = {S}",
            f"degree = {S.element.degree()}",
            f"inverse = {S.inverse}",
            f"order = {order}",
            f"nontrivial = {str(is_nontrivial(S)).lower()}",
        ]
    )
    payload = {
        "action": action.to_descriptor(),
        "element": element_json(S.element),
        "degree": S.element.degree(),
        "inverse": element_json(S.inverse),
        "order": k,
        "bound": args.bound,
        "nontrivial": is_nontrivial(S),
    }
    return True, text, payload


def _report_text(report) -> str:
    lines = [f"{report.name}: {'equal' if report.equal else 'NOT equal'}", f"  lhs = {report.lhs}", f"  rhs = {report.rhs}"]
    for label, ok in report.checks.items():
        lines.append(f"  [{'pass' if ok else 'FAIL'}] {label}")
    for d in report.diff:
        lines.append(f"  differs at {d['generator']} q^{d['q']} t^{d['t']}: lhs {d['lhs']}, rhs {d['rhs']}")
    return "\n".join(lines)


def cmd_verify_thm1(args):
    report = verify_thm1(_action(args), _resolve(args.with_))
    return report.equal, _report_text(report), report.to_json()


def cmd_verify_thm2(args):
    report = verify_thm2(_action(args))
    return report.equal, _report_text(report), report.to_json()


def cmd_validate(args):
    M = _manifold(args)
    report = validate_table(M)
    lines = [f"{M.name}: {'ok' if report.ok else f'{len(report.violations)} violation(s)'}"]
    for v in report.violations:
        lines.append(f"  {v.kind} class={v.cls} args={list(v.args)}: {v.detail}")
    return report.ok, "\n".join(lines), report.to_json()


COMMANDS = {
    "table": cmd_table,
    "qmul": cmd_qmul,
    "inverse": cmd_inverse,
    "order": cmd_order,
    "product": cmd_product,
    "kappa": cmd_kappa,
    "seidel": cmd_seidel,
    "verify-thm1": cmd_verify_thm1,
    "verify-thm2": cmd_verify_thm2,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qhseidel", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--manifold", help=f"catalog name ({', '.join(catalog.catalog_names())}) or descriptor path")
    common.add_argument("--manifold-file", help="manifold descriptor; overrides --manifold")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="quantum multiplication table")
    p.add_argument("--with", dest="with_", help="tabulate the product with this manifold")
    p = sub.add_parser("qmul", parents=[common], help="quantum product of two elements")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p = sub.add_parser("inverse", parents=[common], help="inverse of a homogeneous unit")
    p.add_argument("--element", required=True)
    p = sub.add_parser("order", parents=[common], help="multiplicative order of a unit")
    p.add_argument("--element", required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_ORDER_BOUND)
    p = sub.add_parser("product", parents=[common], help="export the product manifold descriptor")
    p.add_argument("--with", dest="with_", required=True)
    p.add_argument("--out", help="write the descriptor to this file")
    p = sub.add_parser("kappa", parents=[common], help="apply kappa, kappa0 or kappa-prime")
    p.add_argument("--element", required=True)
    p.add_argument("--map", choices=sorted(_MAPS), default="kappa")
    p.add_argument("--with", dest="with_", help="second factor for kappa")
    p = sub.add_parser("seidel", parents=[common], help="Seidel element of a circle action")
    p.add_argument("--action", required=True, help=f"descriptor path or catalog action ({', '.join(catalog.action_names())})")
    p.add_argument("--bound", type=int, default=DEFAULT_ORDER_BOUND)
    p = sub.add_parser("verify-thm1", parents=[common], help="S(psi x id_N) == kappa(S(psi))")
    p.add_argument("--action", required=True)
    p.add_argument("--with", dest="with_", required=True, help="aspherical factor N")
    p = sub.add_parser("verify-thm2", parents=[common], help="kappa'(S) == kappa(S) * kappa0(S)")
    p.add_argument("--action", required=True)
    sub.add_parser("validate", parents=[common], help="check a GW table")
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    fmt = args.format
    try:
        ok, text, payload = COMMANDS[args.command](args)
    except (QHError, _Usage, OSError, ValueError, KeyError) as exc:
        kind = exc.kind if isinstance(exc, QHError) else "UsageError" if isinstance(exc, _Usage) else type(exc).__name__
        print(f"error: {kind}: {exc}", file=err)
        if fmt == "json":
            json.dump({"command": args.command, "ok": False, "error": {"kind": kind, "message": str(exc)}}, out)
            out.write("\n")
        return EXIT_INPUT
    if fmt == "json":
        json.dump({"command": args.command, "ok": ok, "result": payload}, out, ensure_ascii=False)
        out.write("\n")
    else:
        print(text, file=out)
    return EXIT_OK if ok else EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
