"""Grid file formats and the bundled K1 fixtures.

JSON grid files look like ``{"n": 3, "vertices": [[0, 1, "+"], ...]}``
(signed) or ``{"n": 3, "vertices": [[0, 1], ...]}`` (unoriented) with
vertices sorted by ``(col, row)``.  :func:`dumps_grid` writes exactly
this layout with a trailing newline, so parsing and re-serializing is
byte-identical.

The text format has two lines ``X: x_0 x_1 ...`` and ``O: o_0 o_1 ...``
giving, for every column, the row of its ``+`` vertex (X) and of its
``-`` vertex (O).  Lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .alexander import LaurentPoly
from .grid import (GridDiagram, GridError, UnorientedGridDiagram, from_permutations,
                   to_permutations, validate, validate_unoriented)


def grid_to_json(g) -> dict:
    if isinstance(g, GridDiagram):
        verts = [[c, r, "+" if s > 0 else "-"] for c, r, s in sorted(g.vertices)]
    else:
        verts = [[c, r] for c, r in sorted(g.vertices)]
    return {"n": g.n, "vertices": verts}


def grid_from_json(d: dict):
    """Signed or unoriented diagram from a parsed JSON grid file."""
    if not isinstance(d, dict) or "vertices" not in d:
        raise GridError("grid JSON needs a 'vertices' list")
    n = d.get("n")
    verts = d["vertices"]
    if verts and len(verts[0]) == 3:
        return validate(verts, n)
    return validate_unoriented(verts, n)


def dumps_grid(g, fmt: str = "json") -> str:
    if fmt == "json":
        d = grid_to_json(g)
        body = ", ".join(json.dumps(v) for v in d["vertices"])
        return f'{{"n": {d["n"]}, "vertices": [{body}]}}\n'
    if fmt == "xo":
        if not isinstance(g, GridDiagram):
            raise GridError("the X/O format needs a signed diagram")
        xs, os = to_permutations(g)
        return "X: " + " ".join(map(str, xs)) + "\nO: " + " ".join(map(str, os)) + "\n"
    raise ValueError(f"unknown grid format {fmt!r}")


def loads_grid(text: str):
    s = text.strip()
    if s.startswith("{"):
        return grid_from_json(json.loads(s))
    rows = {}
    for line in s.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(":")
        rows[key.strip().upper()] = [int(x) for x in rest.replace(",", " ").split()]
    if set(rows) != {"X", "O"}:
        raise GridError("text grid needs exactly one 'X:' and one 'O:' line")
    return from_permutations(rows["X"], rows["O"])


def load_grid(path) -> GridDiagram | UnorientedGridDiagram:
    return loads_grid(Path(path).read_text())


def save_grid(g, path, fmt: str = "json") -> None:
    Path(path).write_text(dumps_grid(g, fmt))


# --- bundled fixtures ----------------------------------------------------------------

def _data(name: str) -> str:
    return resources.files("legrid").joinpath("data", name).read_text()


def k1_unoriented() -> UnorientedGridDiagram:
    """The 37-grid rigid diagram of K1 (unoriented, as listed)."""
    return grid_from_json(json.loads(_data("k1.json")))


def k1_diagram() -> GridDiagram:
    """K1 with the orientation giving ``+`` to the smallest vertex."""
    return k1_unoriented().orient(0)


def k1_alexander() -> LaurentPoly:
    return LaurentPoly.from_json(json.loads(_data("k1_alexander.json")))


def k1_dt_code() -> list[int]:
    return [int(x) for x in _data("k1_dt.txt").replace(",", " ").split()]
