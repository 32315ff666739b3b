"""Built-in manifold and circle-action catalog.

Names resolve first against ``$QH_CATALOG_DIR`` (if set) and then against
the descriptors shipped with the package.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import ParseError
from .homology import ManifoldModel, load_manifold

__all__ = ["catalog_names", "action_names", "get_manifold", "read_action_descriptor"]

ENV_VAR = "QH_CATALOG_DIR"


def _dirs(sub: str = "") -> list[Path]:
    out = []
    extra = os.environ.get(ENV_VAR)
    if extra:
        out.append(Path(extra) / sub if sub else Path(extra))
    shipped = resources.files("qhseidel") / "catalog"
    out.append(Path(str(shipped / sub)) if sub else Path(str(shipped)))
    return out


def catalog_names() -> list[str]:
    names = set()
    for d in _dirs():
        if d.is_dir():
            names.update(p.stem for p in d.glob("*.json"))
    return sorted(names)


def action_names() -> list[str]:
    names = set()
    for d in _dirs("actions"):
        if d.is_dir():
            names.update(p.stem for p in d.glob("*.json"))
    return sorted(names)


def _find(name: str, sub: str = "") -> Path:
    if name.endswith(".json"):
        name = name[:-5]
    for d in _dirs(sub):
        p = d / f"{name}.json"
        if p.is_file():
            return p
    raise ParseError(f"no catalog entry named {name!r}")


@lru_cache(maxsize=None)
def _load_cached(path: str, mtime: float) -> ManifoldModel:
    return load_manifold(Path(path))


def get_manifold(name: str) -> ManifoldModel:
    """Catalog model by name; repeated calls return the same object."""
    p = _find(name)
    return _load_cached(str(p), p.stat().st_mtime)


def read_action_descriptor(name_or_path: str | Path) -> dict:
    p = Path(name_or_path)
    if not p.is_file():
        p = _find(str(name_or_path), "actions")
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read action descriptor {p}: {exc}") from exc
