"""JSON schemas shared by every CLI subcommand.

Semigroup::

    {"kind": "finite_table", "order": m, "table": [[...], ...]}
    {"kind": "nat_window", "lo": 1, "hi": 100}
    {"kind": "product", "left": <semigroup>, "right": <semigroup>}
    {"kind": "cyclic", "order": m}            # shorthand for Z_m

Wherever a semigroup is expected, a string is read as a path (relative to the
referring file) to a semigroup document.  Ground sets, matrices, sequence
families and chain certificates all carry a ``"semigroup"`` key.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .chains import ChainCertificate, chain_from_sets
from .errors import StructuralError
from .matrix import Matrix, PairMatrix
from .semigroup import FiniteTable, GroundSet, NatWindow, Product, Semigroup, cyclic
from .witnesses import SeqFamily


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise StructuralError(f"cannot read {path}: {exc.strerror}") from None


def resolve(doc: Any, base: Path) -> Any:
    """Inline every semigroup path reference so the document is self-contained."""
    if isinstance(doc, dict):
        out = {}
        for key, value in doc.items():
            if key in ("semigroup", "left", "right") and isinstance(value, str):
                ref = base / value
                value = resolve(read_json(ref), ref.parent)
            out[key] = resolve(value, base)
        return out
    if isinstance(doc, list):
        return [resolve(v, base) for v in doc]
    return doc


def load_document(path: str | Path) -> Any:
    p = Path(path)
    return resolve(read_json(p), p.parent)


def _require(doc: dict, *keys: str) -> None:
    if not isinstance(doc, dict):
        raise StructuralError(f"expected an object, got {type(doc).__name__}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise StructuralError(f"missing key(s) {missing} in {sorted(doc)}")


def semigroup_from_json(doc: Any) -> Semigroup:
    _require(doc, "kind")
    kind = doc["kind"]
    if kind == "finite_table":
        _require(doc, "table")
        table = doc["table"]
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise StructuralError("table must be a list of rows")
        if "order" in doc and doc["order"] != len(table):
            raise StructuralError(f"order {doc['order']} does not match {len(table)} table rows")
        return FiniteTable(table)
    if kind == "cyclic":
        _require(doc, "order")
        return cyclic(int(doc["order"]))
    if kind == "nat_window":
        _require(doc, "lo", "hi")
        return NatWindow(doc["lo"], doc["hi"])
    if kind == "product":
        _require(doc, "left", "right")
        return Product(semigroup_from_json(doc["left"]), semigroup_from_json(doc["right"]))
    raise StructuralError(f"unknown semigroup kind {kind!r}")


def _elements(s: Semigroup, raw: Any) -> list:
    if not isinstance(raw, list):
        raise StructuralError("element list expected")
    try:
        return [s.element_from_json(x) for x in raw]
    except StructuralError:
        raise
    except Exception as exc:
        raise StructuralError(str(exc)) from None


def set_from_json(doc: Any) -> GroundSet:
    _require(doc, "semigroup", "members")
    s = semigroup_from_json(doc["semigroup"])
    return GroundSet(s, _elements(s, doc["members"]))


def set_to_json(A: GroundSet) -> dict:
    return {"semigroup": A.semigroup.to_json(), "members": A.members_json()}


def matrix_from_json(doc: Any, semigroup: Semigroup | None = None) -> Matrix:
    _require(doc, "entries")
    s = semigroup_from_json(doc["semigroup"]) if "semigroup" in doc else semigroup
    if s is None:
        raise StructuralError("matrix has no semigroup")
    entries = doc["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise StructuralError("entries must be a list of rows")
    rows = tuple(tuple(_elements(s, r)) for r in entries)
    if "rows" in doc and doc["rows"] != len(rows):
        raise StructuralError(f"declared rows {doc['rows']} but found {len(rows)}")
    if "cols" in doc and rows and any(len(r) != doc["cols"] for r in rows):
        raise StructuralError(f"declared cols {doc['cols']} do not match the entries")
    if isinstance(s, Product) and s.left == s.right:
        return PairMatrix(s, rows)
    return Matrix(s, rows)


def elements_from_json(doc: Any, s: Semigroup) -> list:
    raw = doc.get("elements") if isinstance(doc, dict) else doc
    return _elements(s, raw)


def family_from_json(doc: Any, semigroup: Semigroup | None = None) -> SeqFamily:
    _require(doc, "sequences")
    s = semigroup_from_json(doc["semigroup"]) if "semigroup" in doc else semigroup
    if s is None:
        raise StructuralError("sequence family has no semigroup")
    seqs = tuple(tuple(_elements(s, f)) for f in doc["sequences"])
    return SeqFamily(s, seqs, int(doc.get("horizon", 0)))


def chain_from_json(doc: Any, semigroup: Semigroup | None = None) -> ChainCertificate:
    _require(doc, "sets")
    s = semigroup_from_json(doc["semigroup"]) if "semigroup" in doc else semigroup
    if s is None:
        raise StructuralError("certificate has no semigroup")
    sets = [_elements(s, members) for members in doc["sets"]]
    shift_map = {}
    for entry in doc.get("shift_map", []):
        _require(entry, "n", "x", "m")
        shift_map[(int(entry["n"]), s.element_from_json(entry["x"]))] = int(entry["m"])
    return chain_from_sets(s, sets, shift_map, doc.get("cr_params"), doc.get("ap_steps"))
