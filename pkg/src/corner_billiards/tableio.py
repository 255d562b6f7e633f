"""JSON table documents.

    {"loops": [[{"kind": "segment", "from": [x, y], "to": [x, y]},
                {"kind": "arc", "center": [x, y], "radius": R,
                 "start_angle": a0, "end_angle": a1, "ccw": true}, ...], ...]}

Angles are radians; the interior lies to the left of the traversal. Extra
keys (such as the ``"source"`` tag written for reduced tables) are ignored.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import TableFormatError
from .geometry import SNAP_TOL, Arc, ReducedTable, Segment, Table


def _number(obj: dict, key: str, where: str) -> float:
    if key not in obj:
        raise TableFormatError(f"{where}: missing {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise TableFormatError(f"{where}: {key!r} must be a finite number, got {v!r}")
    return float(v)


def _pair(obj: dict, key: str, where: str) -> tuple[float, float]:
    v = obj.get(key)
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)):
        raise TableFormatError(f"{where}: {key!r} must be a pair of numbers, got {v!r}")
    return (float(v[0]), float(v[1]))


def component_from_dict(obj, where: str = "component"):
    if not isinstance(obj, dict):
        raise TableFormatError(f"{where}: expected an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    try:
        if kind == "segment":
            comp = Segment(_pair(obj, "from", where), _pair(obj, "to", where))
        elif kind == "arc":
            ccw = obj.get("ccw")
            if not isinstance(ccw, bool):
                raise TableFormatError(f"{where}: 'ccw' must be true or false")
            comp = Arc.from_angles(_pair(obj, "center", where), _number(obj, "radius", where),
                                   _number(obj, "start_angle", where), _number(obj, "end_angle", where), ccw)
        else:
            raise TableFormatError(f"{where}: unknown component kind {kind!r}")
    except TableFormatError as exc:
        if str(exc).startswith(where):
            raise
        raise TableFormatError(f"{where}: {exc}") from exc
    # input components below the junction snap tolerance cannot be told apart from a point
    if comp.length <= SNAP_TOL:
        raise TableFormatError(f"{where}: degenerate {kind}, length {comp.length:.3g}")
    return comp


def table_from_dict(doc) -> Table:
    if not isinstance(doc, dict) or not isinstance(doc.get("loops"), list):
        raise TableFormatError("table document needs a top-level 'loops' array")
    loops = []
    for li, loop in enumerate(doc["loops"]):
        if not isinstance(loop, list) or not loop:
            raise TableFormatError(f"loops[{li}]: expected a non-empty array of components")
        loops.append(tuple(component_from_dict(c, f"loops[{li}][{ci}]") for ci, c in enumerate(loop)))
    return Table(tuple(loops))


def parse_table(text: str, name: str = "<table>") -> Table:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{name}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return table_from_dict(doc)


def load_table(path: str | Path) -> Table:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise TableFormatError(f"cannot read table {path}: {exc.strerror}") from exc
    return parse_table(text, str(path))


def table_to_dict(table: Table) -> dict:
    return {"loops": [[c.to_dict() for c in loop] for loop in table.loops]}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def reduced_to_dict(rt: ReducedTable) -> dict:
    return rt.to_dict()
